"""Word matrices in ``G_lam = <X, Y_lam>`` and relation words built from witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .chebyshev import AlgElem, s_index, vTtt_polys
from .continuant import Mat2
from .numeric import QuadNum, as_quad, sqrt_in_field

__all__ = [
    "ZeroLambda",
    "NotAWitness",
    "X_pow",
    "Y_pow",
    "C_matrix",
    "word_matrix",
    "conj_star",
    "weq_matrix",
    "weq_check",
    "even_lemma_check",
    "eval_syllables",
    "free_reduce",
    "format_word",
    "RelationWord",
    "relation_word",
    "t_lemma_check",
    "third_fourth_kind_check",
]


class ZeroLambda(ValueError):
    pass


class NotAWitness(ValueError):
    pass


def _lam(lam) -> QuadNum:
    lam = as_quad(lam)
    if not lam:
        raise ZeroLambda("lambda must be nonzero")
    return lam


def X_pow(a: int, lam: QuadNum) -> Mat2:
    one, zero = as_quad(1, lam.d), as_quad(0, lam.d)
    return Mat2(one, as_quad(a, lam.d), zero, one)


def Y_pow(b: int, lam: QuadNum) -> Mat2:
    one, zero = as_quad(1, lam.d), as_quad(0, lam.d)
    return Mat2(one, zero, lam * b, one)


def C_matrix(lam) -> Mat2:
    lam = _lam(lam)
    return Mat2(as_quad(0, lam.d), as_quad(1, lam.d), lam, as_quad(0, lam.d))


def _identity(lam: QuadNum) -> Mat2:
    one, zero = as_quad(1, lam.d), as_quad(0, lam.d)
    return Mat2(one, zero, zero, one)


def word_matrix(n: Sequence[int], lam, start: str = "x_first") -> Mat2:
    """``X^{n_1} Y^{n_2} X^{n_3} ...`` (``x_first``) or ``Y^{n_1} X^{n_2} ...`` (``y_first``)."""
    lam = _lam(lam)
    if start not in ("x_first", "y_first"):
        raise ValueError(f"unknown start {start!r}")
    first_x = start == "x_first"
    out = _identity(lam)
    for i, e in enumerate(n):
        use_x = (i % 2 == 0) == first_x
        out = out @ (X_pow(e, lam) if use_x else Y_pow(e, lam))
    return out


def conj_star(n: Sequence[int], lam) -> Mat2:
    """``W*(n)``, the word with ``x`` and ``y`` exchanged."""
    return word_matrix(n, lam, "y_first")


def _inverse(m: Mat2) -> Mat2:
    return m.inverse_unimodular()


def _at_u(p, lam: QuadNum) -> AlgElem:
    return p(AlgElem.u(lam)) if p.coeffs else AlgElem(0, 0, lam)


def _base(x: AlgElem) -> QuadNum:
    if not x.in_base():
        raise ArithmeticError("entry does not lie in the base field")
    return x.a


def weq_matrix(n: Sequence[int], lam) -> tuple[Mat2, Mat2]:
    """The Chebyshev-entry forms of ``W(n)`` and ``W*(n)`` for even-length ``n``."""
    lam = _lam(lam)
    n = tuple(n)
    if len(n) % 2 or not n:
        raise ValueError("need a nonempty even-length sequence")
    m = len(n) // 2
    sig = n[1:]
    sgn = (-1) ** (m - 1)
    top = _at_u(s_index(n, 2 * m + 1), lam)
    up = _at_u(s_index(n, 2 * m), lam)
    sup = _at_u(s_index(sig, 2 * m), lam)
    slo = _at_u(s_index(sig, 2 * m - 1), lam)
    e11 = _base(-top) * sgn
    e12 = _base(up.div_u()) * sgn
    e21 = _base(-sup.mul_u()) * sgn
    e22 = _base(slo) * sgn
    w = Mat2(e11, e12, e21, e22)
    star = Mat2(e22, _base(sup.div_u()) * sgn, _base(-up.mul_u()) * sgn, e11)
    return w, star


def weq_check(n: Sequence[int], lam) -> bool:
    """Direct products against the Chebyshev-entry matrices, both ``W`` and ``W*``."""
    w, star = weq_matrix(n, lam)
    return word_matrix(n, lam) == w and conj_star(n, lam) == star


def even_lemma_check(n: Sequence[int], lam) -> bool:
    """``W(n) = Id`` iff ``W*(n) = Id``; also ``W*(n) = C W(n) C^{-1}``."""
    lam = _lam(lam)
    w, s = word_matrix(n, lam), conj_star(n, lam)
    c = C_matrix(lam)
    cinv = Mat2(as_quad(0, lam.d), lam.inverse(), as_quad(1, lam.d), as_quad(0, lam.d))
    return (w.is_identity() == s.is_identity()) and (c @ w @ cinv) == s


# ---------------------------------------------------------------------------
# words over {x, y}
# ---------------------------------------------------------------------------

Syllable = tuple  # (letter, exponent)


def free_reduce(word: Sequence[Syllable]) -> list[Syllable]:
    out: list[Syllable] = []
    for g, e in word:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((g, e2))
        else:
            out.append((g, e))
    return out


def _invert(word: Sequence[Syllable]) -> list[Syllable]:
    return [(g, -e) for g, e in reversed(word)]


def eval_syllables(word: Sequence[Syllable], lam) -> Mat2:
    lam = _lam(lam)
    out = _identity(lam)
    for g, e in word:
        if g == "x":
            out = out @ X_pow(e, lam)
        elif g == "y":
            out = out @ Y_pow(e, lam)
        else:
            raise ValueError(f"unknown generator {g!r}")
    return out


def format_word(word: Sequence[Syllable]) -> str:
    return " ".join(f"{g}^{{{e}}}" for g, e in word) if word else "1"


def _syllables(n: Sequence[int]) -> list[Syllable]:
    return [("x" if i % 2 == 0 else "y", e) for i, e in enumerate(n)]


@dataclass
class RelationWord:
    witness: tuple
    exponents: tuple  # W = x^{e_1} y^{e_2} ... with lower-triangular value
    word: list
    commutator: list
    verified: bool

    @property
    def word_text(self) -> str:
        return format_word(self.word)

    @property
    def commutator_text(self) -> str:
        return format_word(self.commutator)

    def to_json(self) -> str:
        return json.dumps(
            {
                "witness": list(self.witness),
                "exponents": list(self.exponents),
                "word": [[g, e] for g, e in self.word],
                "commutator": [[g, e] for g, e in self.commutator],
                "word_text": self.word_text,
                "commutator_text": self.commutator_text,
                "verified": self.verified,
            }
        )


def relation_word(n: Sequence[int], lam) -> RelationWord:
    """The commutator ``[W y W^{-1}, y]`` for a lower-triangular ``W`` built from ``n``.

    Even-length witnesses are first doubled to ``(n, 1, n)`` so the zero sits at
    an even index; a final exponent 1 makes the syllable count even.
    """
    lam = _lam(lam)
    n = tuple(int(x) for x in n)
    if not n:
        raise NotAWitness("empty sequence")
    odd = n if len(n) % 2 else n + (1,) + n
    exps = odd + (1,)
    w = word_matrix(exps, lam)
    if w.m12:
        raise NotAWitness("word matrix is not lower triangular")
    wd = free_reduce(_syllables(exps))
    y = [("y", 1)]
    a = wd + y + _invert(wd)
    comm = free_reduce(a + y + _invert(a) + _invert(y))
    ok = eval_syllables(comm, lam).is_identity() and bool(comm)
    return RelationWord(n, exps, wd, comm, ok)


# ---------------------------------------------------------------------------
# first / third / fourth kind checks
# ---------------------------------------------------------------------------


def _poly_zero_at_u(p, lam: QuadNum) -> bool:
    """Whether ``p(sqrt(-lam)) = 0`` for a polynomial of definite parity."""
    return not _at_u(p, lam)


def t_lemma_check(n: Sequence[int], lam) -> dict:
    """``T~``/``T^`` at ``u`` against the matching matrix equalities.

    Odd length: ``T~ = 0`` iff ``W* = W^{-1}``, ``T^ = 0`` iff ``W* = W(-n)^{-1}``.
    Even length: ``T^ = 0`` iff ``W = W(-n)^{-1}``.
    """
    lam = _lam(lam)
    n = tuple(n)
    _, _, tt, th = vTtt_polys(n)
    tt0 = _poly_zero_at_u(tt, lam)
    th0 = _poly_zero_at_u(th, lam)
    neg = tuple(-x for x in n)
    w = word_matrix(n, lam)
    wneg_inv = _inverse(word_matrix(neg, lam))
    out = {"length": len(n), "ttilde_zero": tt0, "that_zero": th0}
    if len(n) % 2:
        st = conj_star(n, lam)
        out["star_is_inverse"] = st == _inverse(w)
        out["star_is_neg_inverse"] = st == wneg_inv
        out["ttilde_iff"] = tt0 == out["star_is_inverse"]
        out["that_iff"] = th0 == out["star_is_neg_inverse"]
        out["ok"] = out["ttilde_iff"] and out["that_iff"]
    else:
        out["w_is_neg_inverse"] = w == wneg_inv
        out["that_iff"] = th0 == out["w_is_neg_inverse"]
        out["ok"] = out["that_iff"]
    return out


def _v_vanishes(v, lam: QuadNum) -> bool:
    """Whether ``v(c) = 0`` for some square root ``c`` of ``-lam`` (``v`` mixed parity)."""
    c = sqrt_in_field(-lam)
    if c is not None:
        return not v(c) or not v(-c)
    # Base[u]/(u^2 + lam) is a field here, and its two embeddings swap u and -u
    return not _at_u(v, lam) or not _at_u(v.neg_t(), lam)


def third_fourth_kind_check(n: Sequence[int], lam) -> bool:
    """If ``v^n_k(+-u) = 0``, confirm that ``(reverse n, n)`` is a witness; vacuous otherwise."""
    lam = _lam(lam)
    n = tuple(n)
    v = vTtt_polys(n)[0]
    if not _v_vanishes(v, lam):
        return True
    from .decide import verify_witness

    long = tuple(reversed(n)) + n
    return verify_witness(lam, long, word=False).ok
