"""
pfg – picture fuzzy subgroups over finite groups.

Exact-arithmetic picture fuzzy sets on Cayley-table groups, the subgroup and
normal-subgroup predicates in all their equivalent forms, cosets, conjugates,
direct products, images, and mechanical verifiers for the cut-set and product
theorems.
"""

from src.groups import FiniteGroup, GroupHomomorphism, GroupSubset
from src.models import CampaignConfig, VerificationReport
from src.pfs import CutThreshold, PictureFuzzySet, PictureTriple, make_pfs
from src.pfsg import PfsgVerdict, is_pfsg, sample_pfnsg, sample_pfsg
from src.registry import group_by_name, load_group
from src.campaign import run_campaign

__version__ = "0.1.0"
__all__ = [
    "FiniteGroup",
    "GroupHomomorphism",
    "GroupSubset",
    "CampaignConfig",
    "VerificationReport",
    "CutThreshold",
    "PictureFuzzySet",
    "PictureTriple",
    "make_pfs",
    "PfsgVerdict",
    "is_pfsg",
    "sample_pfsg",
    "sample_pfnsg",
    "group_by_name",
    "load_group",
    "run_campaign",
]
