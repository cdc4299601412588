"""Error hierarchy with stable machine-readable codes.

The full closed set of codes, shared by the CLI (stderr) and the HTTP
service (JSON bodies):

    dataset_not_found   unknown dataset id
    missing_file        no CSV for a requested ticker
    malformed_csv       bad header or unparseable row
    bad_price           non-positive or non-numeric price value
    insufficient_history  fewer common dates than the analysis needs
    bad_ticker          symbol fails the ticker grammar
    bad_request         malformed parameters (dates, modes, ranges)
    bad_threshold       threshold outside [0, 1]
    degenerate_series   constant series / too few series for statistics
    no_clique           no clique of size >= 2 at this threshold
    lag_too_large       lag leaves fewer than 2 aligned points
    missing_shares      cap-weighted scheme lacks a share count
"""


class CorrgraphError(Exception):
    """Base class; every subclass carries a stable `code` string."""

    code = "error"

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class DataError(CorrgraphError):
    """Ingest-side failures (CLI exit code 2)."""

    code = "data_error"


class MissingFileError(DataError):
    code = "missing_file"


class MalformedCsvError(DataError):
    code = "malformed_csv"


class BadPriceError(DataError):
    code = "bad_price"


class InsufficientHistoryError(DataError):
    code = "insufficient_history"


class BadTickerError(DataError):
    code = "bad_ticker"


class AnalysisError(CorrgraphError):
    """Degenerate analyses on otherwise valid data (CLI exit code 3)."""

    code = "analysis_error"


class BadRequestError(AnalysisError):
    code = "bad_request"


class BadThresholdError(AnalysisError):
    code = "bad_threshold"


class DegenerateSeriesError(AnalysisError):
    code = "degenerate_series"


class NoCliqueError(AnalysisError):
    code = "no_clique"


class LagTooLargeError(AnalysisError):
    code = "lag_too_large"


class MissingSharesError(AnalysisError):
    code = "missing_shares"


class DatasetNotFoundError(CorrgraphError):
    code = "dataset_not_found"
