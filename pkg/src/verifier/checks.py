"""
The registered inequality checks.

Each check draws one random instance from the CheckSpec distribution with the
generator it is handed and returns the inequalities evaluated on it. Checks
whose hypotheses fail on an instance report it as skipped.
"""

import math

import numpy as np

from ..control.bch import bch_constant, bch_term, bch_truncated_generator
from ..control.emulation import correction_generator, trotter_product
from ..dense.backend import (
    expm_i,
    normalized_frobenius,
    operator_norm,
    pauli_decompose,
    pauli_label_matrix,
    random_hermitian,
    random_unitary,
    to_dense,
    traceless_log,
    unitary_distance,
)
from ..dense.operator import DenseOperator
from ..learner.params import poly_regime_time
from ..pauli.labels import all_labels
from ..pauli.generator import perturb, random_sparse_hamiltonian
from ..pauli.polynomial import SparseHamiltonian
from ..pauli.span import f2_span
from ..pauli.truncation import top_k, truncate_sparse_bounded
from ..tomography.sampling import bell_sampling_distribution, choi_amplitudes
from .contracts import CheckDefinition, CheckSpec, Comparison, TrialOutcome
from .registry import register_check

EXACT_TOL = 1e-10


def _draw(spec: CheckSpec, rng: np.random.Generator) -> tuple[int, int, float, float]:
    n = int(rng.choice(spec.n_values))
    m = min(int(rng.choice(spec.m_values)), 4**n - 1)
    T = float(rng.choice(spec.T_values))
    epsilon = float(rng.uniform(*spec.epsilon_range))
    return n, m, T, epsilon


def _pair(n: int, m: int, epsilon: float, rng: np.random.Generator
          ) -> tuple[SparseHamiltonian, SparseHamiltonian]:
    """H and an m-sparse H_j: a perturbation of H or an independent draw."""
    H = random_sparse_hamiltonian(n, m, seed=rng)
    if rng.random() < 0.5:
        return H, perturb(H, epsilon, seed=rng)
    return H, random_sparse_hamiltonian(n, m, seed=rng)


def _terms(H) -> dict[str, float]:
    return {str(label): float(np.real(c)) for label, c in H.items()}


def _norm(H: SparseHamiltonian) -> float:
    return operator_norm(to_dense(H))


def check_duhamel(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """||e^{-iXt} e^{iYt} - I|| <= t ||X - Y|| in operator and normalized Frobenius norm."""
    n, m, t, epsilon = _draw(spec, rng)
    X = random_sparse_hamiltonian(n, m, seed=rng)
    draw = rng.random()
    if draw < 0.1:
        Y = X
    elif draw < 0.55:
        Y = perturb(X, epsilon, seed=rng, extra_labels=1)
    else:
        Y = random_sparse_hamiltonian(n, m, seed=rng)
    gap = expm_i(to_dense(X), t) @ expm_i(to_dense(Y), -t) - DenseOperator.identity(n)
    difference = to_dense(X - Y)
    return TrialOutcome(
        comparisons=[
            Comparison(label="operator", lhs=operator_norm(gap), rhs=t * operator_norm(difference)),
            Comparison(label="frobenius", lhs=normalized_frobenius(gap),
                       rhs=t * normalized_frobenius(difference)),
        ],
        instance={"n": n, "t": t, "X": _terms(X), "Y": _terms(Y)},
    )


def check_log_norm(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """||W|| <= pi ||I - U|| for the traceless logarithm W of U."""
    n = int(rng.choice(spec.n_values))
    if rng.random() < 0.5:
        U = random_unitary(n, seed=rng)
    else:
        U = expm_i(random_hermitian(n, seed=rng, scale=float(rng.uniform(0.0, 3.0))), 1.0)
    W = traceless_log(U).generator
    gap = DenseOperator.identity(n) - U
    return TrialOutcome(
        comparisons=[
            Comparison(label="operator", lhs=operator_norm(W), rhs=math.pi * operator_norm(gap)),
            Comparison(label="frobenius", lhs=normalized_frobenius(W),
                       rhs=math.pi * normalized_frobenius(gap)),
        ],
        instance={"n": n},
    )


def check_span_4m(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """Support of the correction generator lies in the F2 span of supp(H) u supp(H_j)."""
    n, m, T, epsilon = _draw(spec, rng)
    H, H_j = _pair(n, m, epsilon, rng)
    instance = {"n": n, "m": m, "T": T, "H": _terms(H), "H_j": _terms(H_j)}
    W = correction_generator(H, H_j, T).generator
    if operator_norm(W) >= math.pi - 1e-6:
        return TrialOutcome(instance=instance, skipped=True)

    span = f2_span(H.support | H_j.support, n)
    coefficients = pauli_decompose(W)
    off_span = max(
        (abs(c) for label, c in coefficients.terms.items() if not span.contains(label)),
        default=0.0,
    )
    return TrialOutcome(
        comparisons=[
            Comparison(label="span_size", lhs=float(span.size), rhs=float(4**m)),
            Comparison(label="support_in_span", lhs=float(off_span), rhs=EXACT_TOL),
        ],
        instance=instance,
    )


def check_bch_degree(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """||BCH_r(X, Y)||_F <= C_r M^{r-1} ||X + Y||_F for X = -iHT, Y = iH_jT, r <= 4."""
    n, m, T, epsilon = _draw(spec, rng)
    H, H_j = _pair(n, m, epsilon, rng)
    r = int(rng.integers(1, 5))
    X = H.to_expansion().scale(-1j * T)
    Y = H_j.to_expansion().scale(1j * T)
    M = max(operator_norm(to_dense(X)), operator_norm(to_dense(Y)))
    term = bch_term(X, Y, r)
    return TrialOutcome(
        comparisons=[Comparison(
            label=f"degree_{r}",
            lhs=term.l2_norm(),
            rhs=bch_constant(r) * M ** (r - 1) * (X + Y).l2_norm(),
        )],
        instance={"n": n, "r": r, "T": T, "H": _terms(H), "H_j": _terms(H_j)},
    )


def check_bch_tail(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """||W - W^{(k)}||_F <= (4TeC)^{k+1} sqrt(m) eps for 4TeC <= 1/2.

    The drawn T is capped at m^{-1/K}/(16eC), the admissible time for a random K.
    """
    n, m, T_drawn, epsilon = _draw(spec, rng)
    H, H_j = _pair(n, m, epsilon, rng)
    k = int(rng.integers(1, 5))
    K = int(rng.integers(2, 5))
    constant = max(1.0, _norm(H), _norm(H_j))
    T = min(T_drawn, poly_regime_time(max(H.sparsity, H_j.sparsity), K, constant))
    truncation = bch_truncated_generator(H, H_j, T, k)
    difference = H - H_j
    W = correction_generator(H, H_j, T).generator
    return TrialOutcome(
        comparisons=[
            Comparison(label="tail", lhs=normalized_frobenius(W - to_dense(truncation.generator)),
                       rhs=truncation.ratio ** (k + 1) * math.sqrt(difference.sparsity)
                       * difference.linf_norm()),
            Comparison(label="sparsity", lhs=float(truncation.generator.sparsity),
                       rhs=float(truncation.sparsity_bound)),
        ],
        instance={"n": n, "k": k, "K": K, "T_drawn": T_drawn, "T": T, "H": _terms(H),
                  "H_j": _terms(H_j)},
    )


def check_trotter(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """First-order product formula error t^2/N min(||H||, ||H_j||) ||H - H_j||_F."""
    n, m, T, epsilon = _draw(spec, rng)
    H = random_sparse_hamiltonian(n, m, seed=rng)
    draw = rng.random()
    if draw < 0.2:
        H_j = H.scale(float(rng.uniform(-1.0, 1.0)))
    elif draw < 0.6:
        H_j = perturb(H, epsilon, seed=rng)
    else:
        H_j = random_sparse_hamiltonian(n, m, seed=rng)
    t = float(rng.uniform(0.0, 4.0))
    N = int(rng.integers(1, 9))
    difference = H - H_j
    product = trotter_product(H, H_j, t, N)
    return TrialOutcome(
        comparisons=[Comparison(
            label="frobenius",
            lhs=normalized_frobenius(product - expm_i(to_dense(difference), t)),
            rhs=t**2 / N * min(_norm(H), _norm(H_j)) * difference.l2_norm(),
        )],
        instance={"n": n, "t": t, "N": N, "H": _terms(H), "H_j": _terms(H_j)},
    )


def check_long_time_exact(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """e^{-iH tau} e^{iH_j tau} = e^{-iH(T + tau)} C_j e^{iH_j(T + tau)}."""
    n, m, T, epsilon = _draw(spec, rng)
    H, H_j = _pair(n, m, epsilon, rng)
    tau = float(rng.uniform(0.0, 1.0))
    dense, dense_j = to_dense(H), to_dense(H_j)
    correction = expm_i(dense, -T) @ expm_i(dense_j, T)
    short = expm_i(dense, tau) @ expm_i(dense_j, -tau)
    long = expm_i(dense, T + tau) @ correction @ expm_i(dense_j, -(T + tau))
    return TrialOutcome(
        comparisons=[Comparison(label="identity", lhs=normalized_frobenius(short - long),
                                rhs=EXACT_TOL)],
        instance={"n": n, "T": T, "tau": tau, "H": _terms(H), "H_j": _terms(H_j)},
    )


def check_trunc_stability(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """||A - T_{m,c}(B)||_linf <= 2 ||A - B||_linf for m-sparse A with ||A|| <= c.

    Half the trials put A on the rim of the norm ball and push B outside it, so
    the truncation has to rescale.
    """
    n, m, _, _ = _draw(spec, rng)
    c = 1.0
    A = random_sparse_hamiltonian(n, m, seed=rng)
    extra = int(rng.integers(0, m + 1))
    if rng.random() < 0.5:
        A = A.scale(float(rng.uniform(0.2, 0.9)) * c / A.l1_norm())
        B = perturb(A, float(rng.uniform(0.0, 0.1 / m)), seed=rng, extra_labels=extra)
    else:
        A = A.scale(float(rng.uniform(0.95, 1.0)) * c / _norm(A))
        B = perturb(A.scale(1.0 + float(rng.uniform(0.1, 0.3))), float(rng.uniform(0.0, 0.01 / m)),
                    seed=rng, extra_labels=extra)
    truncated = truncate_sparse_bounded(B, m, c)
    return TrialOutcome(
        comparisons=[Comparison(label="linf", lhs=(A - truncated).linf_norm(),
                                rhs=2 * (A - B).linf_norm())],
        instance={"n": n, "m": m, "active": _norm(top_k(B, m)) > c, "A": _terms(A),
                  "B": _terms(B)},
    )


def check_power_growth(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """||A^k||_linf <= m^{k-1} ||A||_linf^k for k <= 3."""
    n, m, _, _ = _draw(spec, rng)
    A = random_sparse_hamiltonian(n, m, seed=rng)
    k = int(rng.integers(1, 4))
    return TrialOutcome(
        comparisons=[Comparison(label=f"power_{k}", lhs=A.power(k).linf_norm(),
                                rhs=A.sparsity ** (k - 1) * A.linf_norm() ** k)],
        instance={"n": n, "k": k, "A": _terms(A)},
    )


def check_first_order(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """Choi amplitudes of e^{-iAt} against |0> - it sum alpha_x |x>, for t <= 1/(m eps)."""
    n, m, _, epsilon = _draw(spec, rng)
    A = random_sparse_hamiltonian(n, m, seed=rng)
    A = A.scale(epsilon / A.linf_norm())
    t = float(rng.uniform(0.0, 1.0)) / (m * epsilon)
    dense = to_dense(A)
    U = expm_i(dense, t)
    beta = choi_amplitudes(U).amplitudes

    first = np.zeros_like(beta)
    first[0] = 1.0
    for label, alpha in A.terms.items():
        first[label.index] = -1j * t * alpha
    linf = float(np.max(np.abs(beta - first)))
    remainder = U - DenseOperator.identity(n) + dense * (1j * t)
    return TrialOutcome(
        comparisons=[
            Comparison(label="linf", lhs=linf, rhs=m * t**2 * epsilon**2),
            Comparison(label="frobenius", lhs=normalized_frobenius(remainder),
                       rhs=t**2 * A.l2_norm() * operator_norm(dense)),
        ],
        instance={"n": n, "t": t, "A": _terms(A)},
    )


def check_correction_norms(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """Norm bounds on the correction generator in both sparsity regimes."""
    n, m, T, epsilon = _draw(spec, rng)
    H, H_j = _pair(n, m, epsilon, rng)
    m = max(H.sparsity, H_j.sparsity)
    eps = (H - H_j).linf_norm()
    if rng.random() < 0.5:
        regime = "log_sparse"
        F_bound = 2 * math.pi * T * math.sqrt(m) * eps
        op_bound = 2 * math.pi * T * m * eps
    else:
        regime = "poly_sparse"
        K = int(rng.choice([2, 3]))
        T = poly_regime_time(m, K, max(1.0, _norm(H), _norm(H_j)))
        F_bound = math.sqrt(m) * eps
        op_bound = m * eps
    W = correction_generator(H, H_j, T).generator
    return TrialOutcome(
        comparisons=[
            Comparison(label=f"{regime}_frobenius", lhs=normalized_frobenius(W), rhs=F_bound),
            Comparison(label=f"{regime}_operator", lhs=operator_norm(W), rhs=op_bound),
        ],
        instance={"n": n, "T": T, "regime": regime, "H": _terms(H), "H_j": _terms(H_j)},
    )


def check_choi_encoding(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """Decoded Choi amplitudes equal tr(P_x^dagger U)/2^n; Bell sampling probabilities sum to 1."""
    n = int(rng.choice(spec.n_values))
    U = random_unitary(n, seed=rng)
    amplitudes = choi_amplitudes(U).amplitudes
    dim = 1 << n
    direct = np.zeros(4**n, dtype=complex)
    for label in all_labels(n):
        direct[label.index] = np.vdot(pauli_label_matrix(label).matrix, U.matrix) / dim
    total = sum(bell_sampling_distribution(U).values())
    return TrialOutcome(
        comparisons=[
            Comparison(label="amplitudes", lhs=float(np.max(np.abs(amplitudes - direct))),
                       rhs=EXACT_TOL),
            Comparison(label="distribution", lhs=abs(total - 1.0), rhs=EXACT_TOL),
        ],
        instance={"n": n},
    )


def check_distance_metric(spec: CheckSpec, rng: np.random.Generator) -> TrialOutcome:
    """Triangle inequality of the phase-invariant distance."""
    n = int(rng.choice(spec.n_values))
    U, V, W = (random_unitary(n, seed=rng) for _ in range(3))
    return TrialOutcome(
        comparisons=[Comparison(
            label="triangle",
            lhs=unitary_distance(U, W),
            rhs=unitary_distance(U, V) + unitary_distance(V, W),
        )],
        instance={"n": n},
    )


CHECK_DEFINITIONS: list[CheckDefinition] = [
    CheckDefinition(name="duhamel", description="product of evolutions vs generator gap",
                    func=check_duhamel),
    CheckDefinition(name="log_norm", description="traceless logarithm norm bound",
                    func=check_log_norm),
    CheckDefinition(name="span_4m", description="F2-span containment of the correction support",
                    func=check_span_4m),
    CheckDefinition(name="bch_degree", description="degreewise BCH Frobenius bound",
                    func=check_bch_degree),
    CheckDefinition(name="bch_tail", description="certified BCH truncation tail",
                    func=check_bch_tail),
    CheckDefinition(name="trotter", description="first-order product formula error",
                    func=check_trotter),
    CheckDefinition(name="long_time_exact", description="long-time step identity",
                    func=check_long_time_exact),
    CheckDefinition(name="trunc_stability", description="sparse bounded truncation stability",
                    func=check_trunc_stability),
    CheckDefinition(name="power_growth", description="Pauli coefficient growth under powers",
                    func=check_power_growth),
    CheckDefinition(name="first_order", description="first-order reduction to tomography",
                    func=check_first_order),
    CheckDefinition(name="table1_norms", description="correction generator norm bounds",
                    func=check_correction_norms),
    CheckDefinition(name="choi_encoding", description="Choi state decoding",
                    func=check_choi_encoding),
    CheckDefinition(name="distance_metric", description="triangle inequality of d",
                    func=check_distance_metric),
]


def register_all_checks() -> None:
    for definition in CHECK_DEFINITIONS:
        register_check(definition)
