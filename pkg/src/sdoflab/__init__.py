"""Secure-degrees-of-freedom laboratory for the jammed MIMO multiple-access channel.

Submodules
----------
matlin
    Complex matrix and subspace toolkit.
model
    Antenna configurations, random channels, power policies.
regions
    Closed-form SDoF, converse bounds, case regions, jamming planner.
precoders
    Jamming/legitimate precoder synthesis and zero-forcing reception.
rates
    Gaussian mutual information, power sweeps, slope estimation.
binning
    Random-binning wiretap codec with exact equivocation.
cli
    Command-line front end.
"""

from .model import AntennaConfig, ChannelRealization, PowerPolicy
from .regions import CaseId, JammingPlan, classify_case, jamming_plan, sum_sdof, upper_bound_terms

__version__ = "0.1.0"

__all__ = [
    "AntennaConfig", "ChannelRealization", "PowerPolicy",
    "CaseId", "JammingPlan", "classify_case", "jamming_plan",
    "sum_sdof", "upper_bound_terms", "__version__",
]
