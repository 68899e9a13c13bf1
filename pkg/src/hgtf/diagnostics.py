"""Warning categories for numerical diagnostics.

These are warnings rather than errors: an analysis of a leaky or
under-covered signal is still returned, just flagged.  The CLI promotes them
to a non-zero exit status under ``--strict``.
"""


class HGTFWarning(UserWarning):
    """Base class of the package's numerical diagnostics."""


class LeakageWarning(HGTFWarning):
    """Signal does not decay to ~0 at the ends of its time grid."""


class SamplingWarning(HGTFWarning):
    """Time grid too coarse (or too short) for the requested window."""


class CoverageWarning(HGTFWarning):
    """Time-frequency grid truncates a non-negligible part of the distribution."""
