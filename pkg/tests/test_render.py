from fractions import Fraction as F

import pytest

from patternspace import catalog
from patternspace.core import UnboundedRequest
from patternspace.geometry import Window, ALL
from patternspace.instances import dirac_comb
from patternspace.voronoi import punctured_voronoi_tiling
from patternspace.render import render_svg, Box, count_elements, fill_classes


def test_zero_pattern_is_empty(zsq):
    svg = render_svg(zsq.zero_like(), Window.ball((0, 0), 2))
    assert '<g transform' in svg and count_elements(svg, "point") == 0


def test_checkerboard_box():
    svg = render_svg(catalog.checkerboard(2), Box((0, 0), (4, 4)))
    assert count_elements(svg, "tile") == 16
    assert len(fill_classes(svg)) == 2


def test_lattice_ball(zsq):
    # 3x3 block of Z^2 inside B(0, 3/2)
    assert count_elements(render_svg(zsq, Window.ball((0, 0), F(3, 2))), "point") == 9


def test_one_dimensional_tiling(z):
    # cells [k - 1/2, k + 1/2] inside [-2, 2]: k = -1, 0, 1
    svg = render_svg(punctured_voronoi_tiling(z), Box((-2,), (2,)))
    assert count_elements(svg, "tile") == 3 and count_elements(svg, "puncture") == 3


def test_dirac(zsq):
    mu, _ = dirac_comb(zsq)
    assert count_elements(render_svg(mu, Window.ball((0, 0), 1)), "dirac") == 5


def test_unbounded(zsq):
    with pytest.raises(UnboundedRequest):
        render_svg(zsq, ALL)


def test_deterministic():
    cb = catalog.checkerboard(2)
    assert render_svg(cb, Box((0, 0), (3, 3))) == render_svg(catalog.checkerboard(2), Box((0, 0), (3, 3)))
