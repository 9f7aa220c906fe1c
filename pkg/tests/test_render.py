from platforge.braid import parse_braid
from platforge.render import plat_svg


def test_svg_smoke():
    svg = plat_svg(parse_braid("strands=6; 2^7 4^-9"))
    assert svg.startswith("<svg")
    assert svg.endswith("</svg>")
    assert svg.count("<path") > 10
