"""Deterministic ordering and printing of element labels.

Labels are strings, integers, or (nested) tuples of these.  Every
enumeration in the package sorts by :func:`sort_key`, so outputs do not
depend on hash seeds or insertion order.
"""


def sort_key(x):
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(e) for e in x))
    if x is None:
        return (-1,)
    raise TypeError(f"unsupported label type {type(x).__name__}")


def sorted_labels(xs):
    return sorted(xs, key=sort_key)


def label_str(x):
    """Render a label as a string; tuples become ``(a,b,...)``."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label_str(e) for e in x) + ")"
    return str(x)
