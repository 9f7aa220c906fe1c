"""Best-effort SVG grid renderer for plat braid words.

Debug aid only: it draws the braid grid with over/under gaps and the cap
arcs.  No correctness contract; the combinatorial `Diagram` is the source
of truth.
"""

from __future__ import annotations

from .braid import BraidWord

__all__ = ["plat_svg"]

_STEP = 26
_MARGIN = 30


def plat_svg(word: BraidWord, stroke: str = "#222") -> str:
    n = word.strands
    cols = [_MARGIN + i * _STEP for i in range(n)]
    rows = sum(abs(l.power) for l in word.letters) or 1
    height = _MARGIN * 2 + rows * _STEP
    paths = []

    def seg(x1, y1, x2, y2):
        paths.append(
            f'<path d="M {x1} {y1} L {x2} {y2}" stroke="{stroke}" '
            'fill="none" stroke-width="2"/>'
        )

    # caps
    for p in range(n // 2):
        xa, xb = cols[2 * p], cols[2 * p + 1]
        mid = (xa + xb) / 2
        r = (xb - xa) / 2
        paths.append(
            f'<path d="M {xa} {_MARGIN} A {r} {r} 0 0 1 {xb} {_MARGIN}" '
            f'stroke="{stroke}" fill="none" stroke-width="2"/>'
        )
        paths.append(
            f'<path d="M {xa} {height - _MARGIN} A {r} {r} 0 0 0 '
            f'{xb} {height - _MARGIN}" stroke="{stroke}" fill="none" stroke-width="2"/>'
        )

    y = _MARGIN
    pos = list(range(n))
    for let in word.letters:
        j = let.generator_index - 1
        for _ in range(abs(let.power)):
            y2 = y + _STEP
            for i in range(n):
                if i == j:
                    if let.power > 0:
                        # right strand over: break the left strand's diagonal
                        seg(cols[j], y, cols[j] + _STEP * 0.35, y + _STEP * 0.35)
                        seg(cols[j] + _STEP * 0.65, y + _STEP * 0.65, cols[j + 1], y2)
                        seg(cols[j + 1], y, cols[j], y2)
                    else:
                        seg(cols[j + 1], y, cols[j + 1] - _STEP * 0.35, y + _STEP * 0.35)
                        seg(cols[j + 1] - _STEP * 0.65, y + _STEP * 0.65, cols[j], y2)
                        seg(cols[j], y, cols[j + 1], y2)
                elif i != j + 1:
                    seg(cols[i], y, cols[i], y2)
            y = y2
    for i in range(n):
        seg(cols[i], y, cols[i], height - _MARGIN)

    width = _MARGIN * 2 + (n - 1) * _STEP
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}">' + "".join(paths) + "</svg>"
    )
