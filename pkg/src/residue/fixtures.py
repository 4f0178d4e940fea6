"""Named plane curves used by the CLI, the class syntax and the tests."""

from .algebra.parser import parse_expression

CURVE_TEXT = {
    "node": "s^2*(s+1) - t^2",
    "cusp": "t^2 - s^3",
    "tacnode": "t^2 - s^4",
    "inode": "s^2 + t^2 - s^3",
    "conic": "s^2 + t^2 - 1",
    "parabola": "t - s^2",
    "s": "s",
    "t": "t",
    "st": "s*t",
}


def curve_table(extra=None):
    """Name to :class:`MultiPoly`, with ``extra`` texts overriding fixtures."""
    texts = dict(CURVE_TEXT)
    texts.update(extra or {})
    return {name: parse_expression(text) for name, text in texts.items()}
