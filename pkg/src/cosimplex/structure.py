"""Evaluation of identity words against concrete structure maps.

Both simplicial and cosimplicial objects store their elementary structure
maps in dictionaries; this module composes words of them and reports the
first identity that fails.
"""


def word_map(word, start, get, compose, identity):
    cur = identity(start)
    for op in word:
        cur = compose(get(op), cur)
    return cur


def first_violation(identities, get, compose, identity, equal):
    """Name of the first failing identity, or None.

    ``identities`` is a list of (name, start level, lhs word, rhs word);
    ``equal(a, b, start)`` compares two maps out of the start level.
    """
    for name, start, lhs, rhs in identities:
        a = word_map(lhs, start, get, compose, identity)
        b = word_map(rhs, start, get, compose, identity)
        if not equal(a, b, start):
            return name
    return None


def compose_dicts(g, f):
    """g after f for maps stored as dicts."""
    return {x: g[y] for x, y in f.items()}


class Cosimplicial:
    """Shared machinery for truncated cosimplicial objects.

    Subclasses store ``cofaces[(n, i)]`` for d^i: X^{n-1} -> X^n and
    ``codegeneracies[(n, i)]`` for s^i: X^{n+1} -> X^n (keys carry the target
    level) and implement ``_compose(g, f)``, ``_identity(n)`` and
    ``_equal(a, b, n)``.
    """

    trunc: int

    def _get(self, op):
        kind, n, i = op
        return self.cofaces[(n, i)] if kind == "d" else self.codegeneracies[(n, i)]

    def apply(self, theta):
        """The structure map X(theta): X^m -> X^n for theta: [m] -> [n]."""
        from .errors import DegreeError
        from .ordinals import factor
        cache = self.__dict__.setdefault("_apply_cache", {})
        if theta not in cache:
            if max(theta.source, theta.target) > self.trunc:
                raise DegreeError("ordinal map outside the truncation")
            cache[theta] = word_map(factor(theta), theta.source, self._get,
                                    self._compose, self._identity)
        return cache[theta]

    def identity_violation(self):
        from .ordinals import cosimplicial_identities
        return first_violation(cosimplicial_identities(self.trunc), self._get,
                               self._compose, self._identity, self._equal)

    def _check_identities(self):
        from .errors import ValidationError
        bad = self.identity_violation()
        if bad:
            raise ValidationError(f"cosimplicial identity fails: {bad}", law=bad)
