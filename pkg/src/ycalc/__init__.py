"""Executable Y-calculus and ZX-calculus diagrams."""

from .angle import Angle, as_angle, fragment
from .diagram import (
    Boundary, Builder, Diagram, DiagramError, HBox, HNode, PiDot, XSpider, YBox, ZSpider,
    box, cap, colour_swap, compose, cup, empty, expand_hnode, flip_vertical, generator,
    graph_state, identity, spider, swap, tensor, validate,
)
from .exact import Exact
from .semantics import (
    Tensor, contract_plan, equal_semantics, interpret, interpret_model, re_im_split,
)

from .io import ParseError, dumps, load, parse, save
from .models import bundle_model, flip_model, preservation_matrix, prime_model, standard_model
from .rules import check_soundness, lemma_catalog, rule_catalog, simplify
from .translate import (
    TranslationError, im_part, re_part, universal_embed, y_to_zx, y_to_zxr, zx_to_y, zxr_to_y,
)

__version__ = "0.1.0"
