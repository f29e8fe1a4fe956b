"""Difference-reflection operators and exact verification of their algebras.

Operators are immutable expression trees acting on exact polynomials.
Internally an action is carried as a rational function (numerator,
denominator) pair; the single exact division happens at the root of the
tree, so intermediate rational coefficients such as 1/(2x+1) never cause
spurious division failures.  If the final division leaves a remainder the
operator was not polynomial-preserving, which is always a transcription
bug, and OperatorNotPolynomialPreserving is raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import NonzeroRemainder, OperatorNotPolynomialPreserving
from .exact import I, ComplexRational, Polynomial
from .polyfam import (
    DAHAParameterSet,
    ParameterSet,
    bi_polynomials,
    nonsym_wilson_family,
    param_map_bi_to_daha,
    wilson_eigenvalue,
)

HALF = ComplexRational(Fraction(1, 2))
QUARTER = ComplexRational(Fraction(1, 4))

RatFunc = Tuple[Polynomial, Polynomial]


class DifferenceOperator:
    """Base class; subclasses implement _apply_raw on rational functions."""

    def _apply_raw(self, num: Polynomial, den: Polynomial) -> RatFunc:
        raise NotImplementedError

    def apply(self, p: Polynomial) -> Polynomial:
        num, den = self._apply_raw(p, Polynomial.one())
        try:
            return num.exact_div(den)
        except NonzeroRemainder as exc:
            raise OperatorNotPolynomialPreserving(
                f"operator action left remainder on input of degree {p.degree}",
                operator=self,
                remainder=exc.remainder,
            ) from exc

    def __add__(self, other):
        other = _coerce_operator(other)
        return OperatorSum((self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce_operator(other))

    def __rsub__(self, other):
        return _coerce_operator(other) + (-self)

    def __neg__(self):
        return ScalarMultiple(ComplexRational(-1), self)

    def __mul__(self, other):
        if isinstance(other, DifferenceOperator):
            return OperatorProduct(self, other)
        return ScalarMultiple(ComplexRational.coerce(other), self)

    def __rmul__(self, other):
        return ScalarMultiple(ComplexRational.coerce(other), self)


def _coerce_operator(v) -> DifferenceOperator:
    if isinstance(v, DifferenceOperator):
        return v
    return ScalarMultiple(ComplexRational.coerce(v), Identity())


class Identity(DifferenceOperator):
    def _apply_raw(self, num, den):
        return num, den

    def __repr__(self):
        return "1"


class Substitution(DifferenceOperator):
    """Composition-with-affine-map primitive: (Op f)(x) = f(s*x + t).

    Covers the reflection (s=-1, t=0), the unit shifts (s=1, t=+-1) and
    the imaginary shifts (s=1, t=+-i), as well as their compositions.
    """

    def __init__(self, s, t):
        self.s = ComplexRational.coerce(s)
        self.t = ComplexRational.coerce(t)

    def _apply_raw(self, num, den):
        return num.affine_substitute(self.s, self.t), den.affine_substitute(self.s, self.t)

    def __repr__(self):
        return f"Subst(x -> {self.s}*x + {self.t})"


def reflection() -> Substitution:
    """R: f(x) -> f(-x)."""
    return Substitution(-1, 0)


def unit_shift_plus() -> Substitution:
    """T+: f(x) -> f(x+1)."""
    return Substitution(1, 1)


def unit_shift_minus() -> Substitution:
    """T-: f(x) -> f(x-1)."""
    return Substitution(1, -1)


def imag_shift_plus() -> Substitution:
    """S+: f(x) -> f(x+i)."""
    return Substitution(1, I)


def imag_shift_minus() -> Substitution:
    """S-: f(x) -> f(x-i)."""
    return Substitution(1, -I)


class PolynomialMultiple(DifferenceOperator):
    def __init__(self, poly: Polynomial):
        self.poly = poly

    def _apply_raw(self, num, den):
        return self.poly * num, den

    def __repr__(self):
        return f"Mul({self.poly!r})"


class RationalMultiple(DifferenceOperator):
    """Multiplication by a rational function num/den; division is deferred."""

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("rational coefficient with zero denominator")
        self.num = num
        self.den = den

    def _apply_raw(self, num, den):
        return self.num * num, self.den * den

    def __repr__(self):
        return f"RatMul({self.num!r} / {self.den!r})"


class ScalarMultiple(DifferenceOperator):
    def __init__(self, scalar: ComplexRational, op: DifferenceOperator):
        self.scalar = scalar
        self.op = op

    def _apply_raw(self, num, den):
        n, d = self.op._apply_raw(num, den)
        return self.scalar * n, d

    def __repr__(self):
        return f"({self.scalar}) * {self.op!r}"


class OperatorSum(DifferenceOperator):
    def __init__(self, terms):
        flat = []
        for t in terms:
            if isinstance(t, OperatorSum):
                flat.extend(t.terms)
            else:
                flat.append(t)
        self.terms = tuple(flat)

    def _apply_raw(self, num, den):
        acc_n, acc_d = Polynomial.zero(), Polynomial.one()
        for t in self.terms:
            n, d = t._apply_raw(num, den)
            acc_n, acc_d = acc_n * d + n * acc_d, acc_d * d
        return acc_n, acc_d

    def __repr__(self):
        return " + ".join(repr(t) for t in self.terms)


class OperatorProduct(DifferenceOperator):
    """Composition: (left * right) p = left(right(p))."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _apply_raw(self, num, den):
        n, d = self.right._apply_raw(num, den)
        return self.left._apply_raw(n, d)

    def __repr__(self):
        return f"({self.left!r}) o ({self.right!r})"


def anticommutator(a: DifferenceOperator, b: DifferenceOperator) -> DifferenceOperator:
    """{a, b} = ab + ba."""
    return a * b + b * a


def multiplication_by_x() -> PolynomialMultiple:
    return PolynomialMultiple(Polynomial.x())


def apply(op: DifferenceOperator, p: Polynomial) -> Polynomial:
    return op.apply(p)


def build_L(p: ParameterSet) -> DifferenceOperator:
    """Dunkl shift operator with B_n as eigenfunctions."""
    x = Polynomial.x()
    R = reflection()
    t_plus_r = unit_shift_plus() * R
    t_minus_r = unit_shift_minus() * R
    one = Identity()
    term1 = RationalMultiple((x + 2 * p.c + 1) * (x + 2 * p.d + 1), 2 * x + 1) * (t_plus_r - one)
    term2 = RationalMultiple((x - 2 * p.a - 1) * (x - 2 * p.b - 1), 2 * x - 1) * (t_minus_r - one)
    return term1 - term2 + (p.total + ComplexRational(Fraction(3, 2))) * one


def build_M(p: ParameterSet) -> DifferenceOperator:
    """Imaginary-shift analog of L with Q_n as eigenfunctions."""
    x = Polynomial.x()
    ix = I * x
    R = reflection()
    s_plus_r = imag_shift_plus() * R
    s_minus_r = imag_shift_minus() * R
    one = Identity()
    term1 = RationalMultiple((2 * p.a + 1 - ix) * (2 * p.b + 1 - ix), 1 - 2 * ix) * (s_plus_r - one)
    term2 = RationalMultiple((2 * p.c + 1 + ix) * (2 * p.d + 1 + ix), 1 + 2 * ix) * (s_minus_r - one)
    return term1 + term2 + (p.total + ComplexRational(Fraction(3, 2))) * one


def build_daha_generators(t: DAHAParameterSet):
    """The four involutive generators (T0, T1, U0, U1) in the variable z."""
    z = Polynomial.x()
    R = reflection()
    one = Identity()
    t_minus_r = unit_shift_minus() * R
    T0 = (
        RationalMultiple((t.t0 + t.u0 - z + HALF) * (t.t0 - t.u0 - z + HALF), 1 - 2 * z)
        * (t_minus_r - one)
        + t.t0 * one
    )
    T1 = (
        RationalMultiple((t.t1 + t.u1 + z) * (t.t1 - t.u1 + z), 2 * z) * (R - one)
        + t.t1 * one
    )
    Z = PolynomialMultiple(z)
    U0 = -T0 + Z - HALF * one
    U1 = -T1 - Z
    return T0, T1, U0, U1


@dataclass(frozen=True)
class StructureConstants:
    """Structure constants of the compact (omega) and non-compact (alpha) algebras."""

    omega1: ComplexRational
    omega2: ComplexRational
    omega3: ComplexRational
    alpha1: ComplexRational
    alpha2: ComplexRational
    alpha3: ComplexRational

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json()
                for k in ("omega1", "omega2", "omega3", "alpha1", "alpha2", "alpha3")}


def structure_constants(p: ParameterSet) -> StructureConstants:
    a, b, c, d = p.a, p.b, p.c, p.d
    omega1 = 4 * (a * b + c * d) + (a + b + c + d) + HALF
    omega2 = 2 * (a * a + b * b - c * c - d * d) + (a + b - c - d)
    omega3 = 4 * (a * b - c * d) + (a + b - c - d)
    return StructureConstants(
        omega1=omega1,
        omega2=omega2,
        omega3=omega3,
        alpha1=-omega1,
        alpha2=-I * omega2,
        alpha3=-I * omega3,
    )


# Aliases for the two algebra views; both share one computation.
bi_structure_constants = structure_constants
nc_structure_constants = structure_constants


@dataclass
class RelationCheck:
    relation: str
    degree_checked: int
    passed: bool
    first_failure: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "degree_checked": self.degree_checked,
            "pass": self.passed,
            "first_failure": self.first_failure,
        }


@dataclass
class VerificationReport:
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks], "pass": self.passed}


def _check_annihilates(op: DifferenceOperator, degree: int, relation: str) -> RelationCheck:
    """Exact check that op kills every monomial x^k, k <= degree."""
    for k in range(degree + 1):
        residual = op.apply(Polynomial.monomial(k))
        if not residual.is_zero():
            return RelationCheck(
                relation,
                degree,
                False,
                first_failure={
                    "monomial_degree": k,
                    "residual_poly": residual.to_json(),
                },
            )
    return RelationCheck(relation, degree, True)


def _check_eigen_pairs(op, polys, eigenvalues, relation, degree) -> RelationCheck:
    for n, (poly, lam) in enumerate(zip(polys, eigenvalues)):
        residual = op.apply(poly) - lam * poly
        if not residual.is_zero():
            return RelationCheck(
                relation, degree, False,
                first_failure={"monomial_degree": n, "residual_poly": residual.to_json()},
            )
    return RelationCheck(relation, degree, True)


def verify_eigen_bi(n_max: int, p: ParameterSet) -> VerificationReport:
    """L B_n = lambda_n B_n, exactly, for 0 <= n <= n_max."""
    from .polyfam import bi_eigenvalue

    L = build_L(p)
    polys = bi_polynomials(n_max, p)
    lams = [bi_eigenvalue(n, p) for n in range(n_max + 1)]
    return VerificationReport([_check_eigen_pairs(L, polys, lams, "L B_n = lambda_n B_n", n_max)])


def verify_eigen_q(n_max: int, p: ParameterSet) -> VerificationReport:
    """M Q_n = lambda_n Q_n, exactly, for 0 <= n <= n_max."""
    from .polyfam import bi_eigenvalue, q_polynomials

    M = build_M(p)
    polys = q_polynomials(n_max, p)
    lams = [bi_eigenvalue(n, p) for n in range(n_max + 1)]
    return VerificationReport([_check_eigen_pairs(M, polys, lams, "M Q_n = lambda_n Q_n", n_max)])


def verify_nonsym_wilson_eigen(n_max: int, t: DAHAParameterSet) -> VerificationReport:
    """(T0 + T1) p_n = gamma_n p_n, exactly, for 0 <= n <= n_max."""
    T0, T1, _, _ = build_daha_generators(t)
    H = T0 + T1
    polys = nonsym_wilson_family(n_max, t)
    gammas = [wilson_eigenvalue(n, t) for n in range(n_max + 1)]
    return VerificationReport(
        [_check_eigen_pairs(H, polys, gammas, "(T0+T1) p_n = gamma_n p_n", n_max)]
    )


def bi_realization(p: ParameterSet):
    """(K1, K2, K3, constants) with K3 defined by the first algebra relation."""
    sc = structure_constants(p)
    K1 = build_L(p)
    K2 = multiplication_by_x()
    K3 = anticommutator(K1, K2) - sc.omega3
    return K1, K2, K3, sc


def verify_bi_algebra(p: ParameterSet, degree: int,
                      constants: Optional[StructureConstants] = None) -> VerificationReport:
    """Check the two compact-algebra relations not used to define K3.

    ``constants`` overrides the computed structure constants; passing a
    perturbed set is the supported negative control.
    """
    sc = constants if constants is not None else structure_constants(p)
    K1 = build_L(p)
    K2 = multiplication_by_x()
    K3 = anticommutator(K1, K2) - sc.omega3
    rel2 = anticommutator(K2, K3) - K1 - _coerce_operator(sc.omega1)
    rel3 = anticommutator(K3, K1) - K2 - _coerce_operator(sc.omega2)
    return VerificationReport([
        _check_annihilates(rel2, degree, "{K2,K3} = K1 + omega1"),
        _check_annihilates(rel3, degree, "{K3,K1} = K2 + omega2"),
    ])


def verify_nc_algebra(p: ParameterSet, degree: int,
                      constants: Optional[StructureConstants] = None,
                      flip_first_sign: bool = False) -> VerificationReport:
    """Check the two non-compact relations; note the -A1 sign.

    ``flip_first_sign=True`` tests the (wrong) compact-style sign
    {A2,A3} = +A1 + alpha1 and must fail; it exists as a negative control
    distinguishing the two algebras.
    """
    sc = constants if constants is not None else structure_constants(p)
    A1 = build_M(p)
    A2 = multiplication_by_x()
    A3 = anticommutator(A1, A2) - sc.alpha3
    sign = ComplexRational(1 if flip_first_sign else -1)
    rel2 = anticommutator(A2, A3) - sign * A1 - _coerce_operator(sc.alpha1)
    rel3 = anticommutator(A3, A1) - A2 - _coerce_operator(sc.alpha2)
    label = "+A1" if flip_first_sign else "-A1"
    return VerificationReport([
        _check_annihilates(rel2, degree, "{A2,A3} = %s + alpha1" % label),
        _check_annihilates(rel3, degree, "{A3,A1} = A2 + alpha2"),
    ])


def casimir_scalar(p: ParameterSet) -> ComplexRational:
    """Value taken by the Casimir element in both polynomial realizations."""
    a, b, c, d = p.a, p.b, p.c, p.d
    return 2 * (a * a + b * b + c * c + d * d) + (a + b + c + d) + QUARTER


@dataclass
class CasimirReport:
    expected: ComplexRational
    realized_ok: bool
    max_degree_checked: int
    which: str = "compact"

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "expected": self.expected.to_json(),
            "realized_ok": self.realized_ok,
            "max_degree_checked": self.max_degree_checked,
        }


def verify_casimir(p: ParameterSet, degree: int, which: str = "compact") -> CasimirReport:
    """Check the Casimir element acts as the predicted scalar on monomials."""
    expected = casimir_scalar(p)
    sc = structure_constants(p)
    if which == "compact":
        K1 = build_L(p)
        K2 = multiplication_by_x()
        K3 = anticommutator(K1, K2) - sc.omega3
        cas = K1 * K1 + K2 * K2 + K3 * K3
    elif which == "noncompact":
        A1 = build_M(p)
        A2 = multiplication_by_x()
        A3 = anticommutator(A1, A2) - sc.alpha3
        cas = A1 * A1 - A2 * A2 - A3 * A3
    else:
        raise ValueError(f"unknown Casimir form {which!r}")
    check = _check_annihilates(cas - expected, degree, f"Casimir ({which})")
    return CasimirReport(expected=expected, realized_ok=check.passed,
                         max_degree_checked=degree, which=which)


@dataclass
class IsoForwardReport:
    t0_sq: ComplexRational
    t1_sq: ComplexRational
    u0_sq: ComplexRational
    u1_sq: ComplexRational
    report: VerificationReport

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_json(self) -> dict:
        out = {
            "central_values": {
                "t0_sq": self.t0_sq.to_json(),
                "t1_sq": self.t1_sq.to_json(),
                "u0_sq": self.u0_sq.to_json(),
                "u1_sq": self.u1_sq.to_json(),
            },
        }
        out.update(self.report.to_json())
        return out


def iso_forward(K1, K2, K3, sc: StructureConstants, degree: int) -> IsoForwardReport:
    """Map a compact-algebra triple to the four involutive generators.

    Builds Ttilde_i, Utilde_i from (K1, K2, K3), computes the realized
    Casimir scalar, and verifies each square equals its predicted central
    value and that the four generators sum to -1/2 on monomials.
    """
    cas = K1 * K1 + K2 * K2 + K3 * K3
    q_const = cas.apply(Polynomial.one())
    q_scalar = q_const.coefficient(0)

    quarter_op = QUARTER
    T0t = quarter_op * (K1 - K2 - K3 - _coerce_operator(HALF))
    T1t = quarter_op * (K1 + K2 + K3 - _coerce_operator(HALF))
    U0t = quarter_op * (-K1 - K2 + K3 - _coerce_operator(HALF))
    U1t = quarter_op * (-K1 + K2 - K3 - _coerce_operator(HALF))

    sixteenth = ComplexRational(Fraction(1, 16))
    t0_sq = sixteenth * (q_scalar + sc.omega1 - sc.omega2 - sc.omega3 + QUARTER)
    t1_sq = sixteenth * (q_scalar + sc.omega1 + sc.omega2 + sc.omega3 + QUARTER)
    u0_sq = sixteenth * (q_scalar - sc.omega1 - sc.omega2 + sc.omega3 + QUARTER)
    u1_sq = sixteenth * (q_scalar - sc.omega1 + sc.omega2 - sc.omega3 + QUARTER)

    checks = [
        _check_annihilates(T0t * T0t - t0_sq, degree, "Ttilde0^2 = t0~"),
        _check_annihilates(T1t * T1t - t1_sq, degree, "Ttilde1^2 = t1~"),
        _check_annihilates(U0t * U0t - u0_sq, degree, "Utilde0^2 = u0~"),
        _check_annihilates(U1t * U1t - u1_sq, degree, "Utilde1^2 = u1~"),
        _check_annihilates(T0t + T1t + U0t + U1t + HALF, degree,
                           "Ttilde0+Ttilde1+Utilde0+Utilde1 = -1/2"),
    ]
    return IsoForwardReport(t0_sq, t1_sq, u0_sq, u1_sq, VerificationReport(checks))


def iso_inverse(t: DAHAParameterSet, degree: int) -> VerificationReport:
    """Map the involutive generators back to a compact-algebra triple.

    Verifies the three anticommutator relations with structure constants
    4(t1^2 -+ t0^2 +- u0^2 -+ u1^2) and the Casimir identity
    A1^2+A2^2+A3^2 = 4(t0^2+t1^2+u0^2+u1^2) - 1/4, on monomials.
    """
    T0, T1, U0, _ = build_daha_generators(t)
    one = Identity()
    A1 = 2 * T0 + 2 * T1 + HALF * one
    A2 = -(2 * T0) - 2 * U0 - HALF * one
    A3 = 2 * T1 + 2 * U0 + HALF * one

    t0s, t1s = t.t0 * t.t0, t.t1 * t.t1
    u0s, u1s = t.u0 * t.u0, t.u1 * t.u1
    w3 = 4 * (t1s - t0s + u0s - u1s)
    w1 = 4 * (t1s + t0s - u0s - u1s)
    w2 = 4 * (t1s - t0s - u0s + u1s)
    cas_value = 4 * (t0s + t1s + u0s + u1s) - QUARTER

    checks = [
        _check_annihilates(anticommutator(A1, A2) - A3 - _coerce_operator(w3), degree,
                           "{A1,A2} = A3 + 4(t1^2-t0^2+u0^2-u1^2)"),
        _check_annihilates(anticommutator(A2, A3) - A1 - _coerce_operator(w1), degree,
                           "{A2,A3} = A1 + 4(t1^2+t0^2-u0^2-u1^2)"),
        _check_annihilates(anticommutator(A3, A1) - A2 - _coerce_operator(w2), degree,
                           "{A3,A1} = A2 + 4(t1^2-t0^2-u0^2+u1^2)"),
        _check_annihilates(A1 * A1 + A2 * A2 + A3 * A3 - cas_value, degree,
                           "A1^2+A2^2+A3^2 = 4(t0^2+t1^2+u0^2+u1^2) - 1/4"),
    ]
    return VerificationReport(checks)


def verify_daha_relations(t: DAHAParameterSet, degree: int) -> VerificationReport:
    """T_i^2 = t_i^2, U_i^2 = u_i^2, T0+T1+U0+U1 = -1/2, on monomials."""
    T0, T1, U0, U1 = build_daha_generators(t)
    checks = [
        _check_annihilates(T0 * T0 - t.t0 * t.t0, degree, "T0^2 = t0^2"),
        _check_annihilates(T1 * T1 - t.t1 * t.t1, degree, "T1^2 = t1^2"),
        _check_annihilates(U0 * U0 - t.u0 * t.u0, degree, "U0^2 = u0^2"),
        _check_annihilates(U1 * U1 - t.u1 * t.u1, degree, "U1^2 = u1^2"),
        _check_annihilates(T0 + T1 + U0 + U1 + HALF, degree, "T0+T1+U0+U1 = -1/2"),
    ]
    return VerificationReport(checks)


def verify_prop1_coefficients(n_max: int, p: ParameterSet) -> VerificationReport:
    """Coefficient identity (-2)^n p_n(-x/2 + 1/4) = B_n, exactly."""
    t = param_map_bi_to_daha(p)
    wilson = nonsym_wilson_family(n_max, t)
    bi = bi_polynomials(n_max, p)
    minus_two = ComplexRational(-2)
    for n in range(n_max + 1):
        lhs = (minus_two ** n) * wilson[n].affine_substitute(
            ComplexRational(Fraction(-1, 2)), QUARTER
        )
        if lhs != bi[n]:
            return VerificationReport([RelationCheck(
                "(-2)^n p_n(-x/2+1/4) = B_n", n_max, False,
                first_failure={"monomial_degree": n,
                               "residual_poly": (lhs - bi[n]).to_json()},
            )])
    return VerificationReport(
        [RelationCheck("(-2)^n p_n(-x/2+1/4) = B_n", n_max, True)]
    )


def verify_prop1_operator_transform(p: ParameterSet, degree: int) -> VerificationReport:
    """Check that 2(T0+T1) + 1/2, conjugated by z = -x/2 + 1/4, acts as L.

    The conjugation takes a test polynomial q(x) to q(1/2 - 2z), applies
    the operator in the z variable, and substitutes back.
    """
    t = param_map_bi_to_daha(p)
    T0, T1, _, _ = build_daha_generators(t)
    op_z = 2 * T0 + 2 * T1 + HALF * Identity()
    L = build_L(p)

    checks = []
    for k in range(degree + 1):
        q = Polynomial.monomial(k)
        qz = q.affine_substitute(ComplexRational(-2), HALF)
        conj = op_z.apply(qz).affine_substitute(ComplexRational(Fraction(-1, 2)), QUARTER)
        direct = L.apply(q)
        if conj != direct:
            checks.append(RelationCheck(
                "conjugated 2(T0+T1)+1/2 = L", degree, False,
                first_failure={"monomial_degree": k,
                               "residual_poly": (conj - direct).to_json()},
            ))
            return VerificationReport(checks)
    checks.append(RelationCheck("conjugated 2(T0+T1)+1/2 = L", degree, True))
    return VerificationReport(checks)
