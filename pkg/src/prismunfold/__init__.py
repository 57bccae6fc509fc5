"""Edge unfolding of nested prismatoids with machine-checked nets."""
from .estimator import NestedPrismatoidUnfolder, check_prismatoid
from .exceptions import (ChainBroken, CutEdgeMissing, DegenerateEdge, DegenerateHull,
                         GenerationFailed, GeometryError, LengthMismatch, NonPlanarFacet,
                         NonPositiveHeight, NotCCW, NotConvex, NotNested, ParseError,
                         ZeroLengthEdge)
from .generate import GenConfig, gen_nested_prismatoid, gen_nested_prismoid
from .geom import DEFAULT_TOL, Tolerances
from .io import parse_instance, parse_net, serialize_instance, serialize_net
from .prismatoid import Band, Prismatoid, compute_band, validate
from .rmcut import CaseTag, CutPlan, Scheme, plan_cut
from .svg import render_svg
from .unfold import Net, TopRule, unfold
from .verify import VerifyReport, verify_net

__version__ = "0.1.0"
