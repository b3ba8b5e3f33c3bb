"""Exception types shared across the simulator."""


class IsacError(Exception):
    """Base class for all simulator errors."""


class OutOfCoverage(IsacError):
    """Wavenumber falls outside the codebook coverage by more than half a beam."""


class ConfigError(IsacError):
    """Waveform / channel / scenario configuration is inconsistent."""


class NoPeak(IsacError):
    """Spectral peak did not clear the detection threshold."""


class DegenerateCovariance(IsacError):
    """Spatial covariance carries no usable signal energy."""


class InvalidDistribution(IsacError):
    """Probability vector is negative or does not sum to one."""


class ExhaustedTree(IsacError):
    """Hierarchical scan found no detecting child beam at some level."""


class ShapeMismatch(IsacError):
    """Tensor operands have incompatible shapes."""


class NoGraph(IsacError):
    """backward() called on a value with no recorded computation."""


class EmptyCrop(IsacError):
    """Bounding-box crop degenerates to an empty pixel region."""


class HistoryTooShort(IsacError):
    """Tracking estimator was given fewer history slots than required."""


class NoDataAvailable(IsacError):
    """Neither sensing modality ever produced a valid record."""


class EmptyInput(IsacError):
    """Metric aggregation received no samples."""


class DivergenceDetected(IsacError):
    """Training loss became non-finite."""
