"""Quick invariant checks runnable from an installed package (``lfia selftest``)."""
import itertools

import numpy as np

from .channel import SystemConfig, complex_normal, sample_channels, substream
from .codebook import generate_codebooks
from .harness import PROPOSED, BASELINE, SweepSpec, evaluate_trial
from .rxdesign import interference_gram, optimal_receive_basis, residual_ici, rho_k
from .txdesign import quantize_joint


def _random_orthonormal(rng, n, k):
    q, _ = np.linalg.qr(complex_normal(rng, (n, k)))
    return q


def check_rho_identity(rng, n=200):
    worst = 0.0
    for _ in range(n):
        n_r, k = [(3, 2), (4, 3), (5, 3)][rng.integers(3)]
        cross = complex_normal(rng, (k, n_r, n_r))
        V = complex_normal(rng, (k, n_r))
        V /= np.linalg.norm(V, axis=1, keepdims=True)
        A = interference_gram(cross, V)
        U = optimal_receive_basis(A, k)
        worst = max(worst, abs(residual_ici(U, cross, V) - rho_k(A, k)))
    return worst <= 1e-7, f"max |I(U*) - rho_K| = {worst:.2e}"


def check_basis_optimality(rng, n=20, m=20):
    for _ in range(n):
        cross = complex_normal(rng, (2, 3, 3))
        V = complex_normal(rng, (2, 3))
        V /= np.linalg.norm(V, axis=1, keepdims=True)
        best = residual_ici(optimal_receive_basis(interference_gram(cross, V), 2), cross, V)
        for _ in range(m):
            if best > residual_ici(_random_orthonormal(rng, 3, 2), cross, V) + 1e-9:
                return False, "a random basis beat the eigenvector basis"
    return True, f"{n * m} comparisons"


def check_joint_oracle(n=10):
    cfg = SystemConfig(3, 3, 2, 3)
    for trial in range(n):
        ch = sample_channels(cfg, 0, trial)
        cb = generate_codebooks(cfg, 0, trial)
        sel = quantize_joint(ch.cross[0], cb, 0)
        best, best_m = np.inf, None
        for m, digits in enumerate(itertools.product(range(cb.size), repeat=2)):
            d = digits[::-1]  # user 1 is the fastest-moving digit
            cols = np.stack([ch.cross[0][u] @ cb.words[0, u, d[u]] for u in range(2)], axis=1)
            s = np.linalg.svd(cols, compute_uv=False) ** 2
            val = float(np.sort(np.concatenate([s, np.zeros(3 - len(s))]))[:2].sum())
            if val < best - 1e-12:
                best, best_m = val, m + 1
        if best_m != sel.m_star or abs(best - sel.objective) > 1e-9:
            return False, f"trial {trial}: search gave {sel.m_star}, re-scan gave {best_m}"
    return True, f"{n} instances"


def check_paired_dominance(n=20):
    spec = SweepSpec(SystemConfig(3, 3, 2, 2), [10.0], n, 0, (PROPOSED, BASELINE))
    for t in range(n):
        o = evaluate_trial(spec, t)
        if np.any(o.objective[PROPOSED] > o.objective[BASELINE] + 1e-12):
            return False, f"trial {t}: proposed objective above baseline"
        if np.any(o.final_ici[PROPOSED] > o.overall_ici[PROPOSED][:, None] + 1e-9):
            return False, f"trial {t}: final ICI above overall residual ICI"
    return True, f"{n} trials"


CHECKS = {
    "rho-identity": lambda rng: check_rho_identity(rng),
    "basis-optimality": lambda rng: check_basis_optimality(rng),
    "joint-oracle": lambda rng: check_joint_oracle(),
    "paired-dominance": lambda rng: check_paired_dominance(),
}


def run(out=print):
    rng = substream(12345, 0, 99)
    ok = True
    for name, check in CHECKS.items():
        passed, detail = check(rng)
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    return ok
