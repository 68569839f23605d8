"""Utility helpers shared across the kctapes package."""

POINT_SYMBOL = "•"


def format_element(values: tuple[int, ...], branch: int | None = None) -> str:
    """Render a carrier element.

    The empty tuple is ``•``, a one-element tuple is its bare value and longer
    tuples are parenthesised.  Elements of a multi-branch carrier are prefixed
    with their branch index, e.g. ``1:(0,2)``.
    """
    if not values:
        text = POINT_SYMBOL
    elif len(values) == 1:
        text = str(values[0])
    else:
        text = "(" + ",".join(str(v) for v in values) + ")"
    return text if branch is None else f"{branch}:{text}"
