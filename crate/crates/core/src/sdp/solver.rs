//! Dense primal-dual interior-point solver with Nesterov-Todd scaling.
//!
//! The public program form (PSD blocks, free scalars, equality and LMI
//! constraints) is canonicalized to
//!
//! ```text
//!   min Σ_b ⟨C_b, X_b⟩ + c·t   s.t.   Σ_b ⟨A_kb, X_b⟩ + g_k·t = rhs_k,
//!                                      X_b ⪰ 0,  t free,
//! ```
//!
//! with one slack block per LMI and the matrix equality expanded over an
//! orthonormal Hermitian basis. Each iteration factors the Schur complement
//! of the scaled Newton system once and reuses it for a predictor and a
//! corrector solve. Free variables are eliminated through a second, small
//! Schur complement. The method is deterministic: identical inputs and
//! options produce identical outputs.

use crate::linalg::{chol, eig_herm, tri_congruence, CMat, HermMatrix};

use super::program::{
    lmi_basis, ConicProgram, ConicSolution, Constraint, DualValue, PrimalPoint, Sense,
    SolveOptions, SolveStatus,
};
use super::SdpError;

/// Where a canonical row came from, for dual reconstruction.
#[derive(Clone, Copy, Debug)]
enum RowOrigin {
    Eq { constraint: usize },
    LmiComponent,
}

struct StdRow {
    terms: Vec<(usize, CMat)>,
    free_terms: Vec<(usize, f64)>,
    rhs: f64,
    origin: RowOrigin,
}

struct StdForm {
    block_dims: Vec<usize>,
    n_user_blocks: usize,
    n_free: usize,
    c_blocks: Vec<CMat>,
    c_free: Vec<f64>,
    rows: Vec<StdRow>,
    /// Slack block index of each LMI constraint (by constraint index).
    lmi_slack: Vec<Option<usize>>,
    /// Objective sign: +1 for Min, -1 for Max (internal form is always Min).
    flip: f64,
}

fn canonicalize(p: &ConicProgram) -> StdForm {
    let flip = match p.sense {
        Sense::Min => 1.0,
        Sense::Max => -1.0,
    };
    let mut block_dims = p.psd_blocks().to_vec();
    let n_user_blocks = block_dims.len();
    let mut c_blocks: Vec<CMat> = p
        .psd_blocks()
        .iter()
        .enumerate()
        .map(|(b, &d)| match &p.objective_blocks()[b] {
            Some(c) => c.mat().scale_re(flip),
            None => CMat::zeros(d, d),
        })
        .collect();
    let c_free: Vec<f64> = p.objective_free().iter().map(|c| c * flip).collect();
    let mut rows = Vec::new();
    let mut lmi_slack = vec![None; p.constraints().len()];

    for (cidx, c) in p.constraints().iter().enumerate() {
        match c {
            Constraint::Eq { block_terms, free_terms, rhs } => {
                rows.push(StdRow {
                    terms: block_terms.iter().map(|(b, a)| (*b, a.mat().clone())).collect(),
                    free_terms: free_terms.clone(),
                    rhs: *rhs,
                    origin: RowOrigin::Eq { constraint: cidx },
                });
            }
            Constraint::Lmi { dim, block_maps, free_terms, rhs } => {
                let slack = block_dims.len();
                block_dims.push(*dim);
                c_blocks.push(CMat::zeros(*dim, *dim));
                lmi_slack[cidx] = Some(slack);
                let basis = lmi_basis(*dim);
                // Adjoint maps turn ⟨B_q, L_b(X_b)⟩ into ⟨L_b†(B_q), X_b⟩.
                let adjoints: Vec<(usize, crate::linalg::LinMap)> =
                    block_maps.iter().map(|(b, m)| (*b, m.adjoint())).collect();
                for bq in &basis {
                    let mut terms: Vec<(usize, CMat)> = Vec::with_capacity(adjoints.len() + 1);
                    for (b, adj) in &adjoints {
                        terms.push((*b, adj.apply(bq).into_mat()));
                    }
                    terms.push((slack, bq.mat().clone()));
                    let free_row: Vec<(usize, f64)> = free_terms
                        .iter()
                        .map(|(f, h)| (*f, bq.mat().inner(h.mat()).re))
                        .collect();
                    rows.push(StdRow {
                        terms,
                        free_terms: free_row,
                        rhs: bq.mat().inner(rhs.mat()).re,
                        origin: RowOrigin::LmiComponent,
                    });
                }
            }
        }
    }
    StdForm { block_dims, n_user_blocks, n_free: p.free_vars(), c_blocks, c_free, rows, lmi_slack, flip }
}

/// Dense real symmetric positive definite linear solver (Cholesky), with a
/// deterministic diagonal regularization fallback.
struct RealChol {
    n: usize,
    l: Vec<f64>,
}

impl RealChol {
    fn factor(m: &[f64], n: usize) -> Option<RealChol> {
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = m[i * n + j];
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= 0.0 || !sum.is_finite() {
                        return None;
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Some(RealChol { n, l })
    }

    fn factor_regularized(m: &[f64], n: usize) -> Option<RealChol> {
        if let Some(f) = Self::factor(m, n) {
            return Some(f);
        }
        let trace: f64 = (0..n).map(|i| m[i * n + i]).sum();
        let mut reg = 1e-13 * (trace / n as f64).abs().max(1.0);
        for _ in 0..4 {
            let mut regd = m.to_vec();
            for i in 0..n {
                regd[i * n + i] += reg;
            }
            if let Some(f) = Self::factor(&regd, n) {
                return Some(f);
            }
            reg *= 100.0;
        }
        None
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = b.to_vec();
        for i in 0..n {
            let mut sum = x[i];
            for k in 0..i {
                sum -= self.l[i * n + k] * x[k];
            }
            x[i] = sum / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut sum = x[i];
            for k in i + 1..n {
                sum -= self.l[k * n + i] * x[k];
            }
            x[i] = sum / self.l[i * n + i];
        }
        x
    }

}

#[derive(Clone)]
struct Iterate {
    x: Vec<CMat>,
    z: Vec<CMat>,
    y: Vec<f64>,
    t: Vec<f64>,
}

struct Residuals {
    r_p: Vec<f64>,
    r_d: Vec<CMat>,
    r_f: Vec<f64>,
    pobj: f64,
    dobj: f64,
    rel_p: f64,
    rel_d: f64,
    gap_ok: bool,
    gap: f64,
}

impl Residuals {
    /// Relative crossing of the duality gap: positive when the reported
    /// primal objective dips below the dual one (min form).
    fn crossing(&self) -> f64 {
        (-self.gap).max(0.0) / (1.0 + self.pobj.abs())
    }

    fn converged(&self, opts: &SolveOptions) -> bool {
        self.rel_p <= opts.feas_tol && self.rel_d <= opts.feas_tol && self.gap_ok
    }

    /// Scalar progress measure used for keep-best tracking.
    fn metric(&self, opts: &SolveOptions) -> f64 {
        let gap_rel = self.gap.abs() / (1.0 + self.pobj.abs());
        (self.rel_p / opts.feas_tol)
            .max(self.rel_d / opts.feas_tol)
            .max(gap_rel / opts.gap_tol)
            .max(self.crossing() / 1e-8)
    }
}

fn herm_inner(a: &CMat, b: &CMat) -> f64 {
    a.inner(b).re
}

fn compute_residuals(std: &StdForm, it: &Iterate, opts: &SolveOptions) -> Residuals {
    let m = std.rows.len();
    let mut r_p = vec![0.0; m];
    let mut rhs_scale = 0.0f64;
    for (k, row) in std.rows.iter().enumerate() {
        let mut lhs = 0.0;
        for (b, a) in &row.terms {
            lhs += herm_inner(a, &it.x[*b]);
        }
        for (f, g) in &row.free_terms {
            lhs += g * it.t[*f];
        }
        r_p[k] = row.rhs - lhs;
        rhs_scale = rhs_scale.max(row.rhs.abs());
    }
    let mut r_d = Vec::with_capacity(std.block_dims.len());
    let mut c_scale = 0.0f64;
    for (b, c) in std.c_blocks.iter().enumerate() {
        let mut acc = c.sub(&it.z[b]);
        for (k, row) in std.rows.iter().enumerate() {
            for (bb, a) in &row.terms {
                if *bb == b && it.y[k] != 0.0 {
                    acc = acc.sub(&a.scale_re(it.y[k]));
                }
            }
        }
        c_scale = c_scale.max(c.max_abs());
        r_d.push(acc);
    }
    let mut r_f = vec![0.0; std.n_free];
    for (f, c) in std.c_free.iter().enumerate() {
        let mut acc = *c;
        for (k, row) in std.rows.iter().enumerate() {
            for (ff, g) in &row.free_terms {
                if *ff == f {
                    acc -= g * it.y[k];
                }
            }
        }
        c_scale = c_scale.max(c.abs());
        r_f[f] = acc;
    }
    let pobj: f64 = std
        .c_blocks
        .iter()
        .zip(&it.x)
        .map(|(c, x)| herm_inner(c, x))
        .sum::<f64>()
        + std.c_free.iter().zip(&it.t).map(|(c, t)| c * t).sum::<f64>();
    let dobj: f64 = std.rows.iter().zip(&it.y).map(|(row, y)| row.rhs * y).sum();
    let rel_p = r_p.iter().map(|v| v.abs()).fold(0.0, f64::max) / (1.0 + rhs_scale);
    let rel_d = r_d
        .iter()
        .map(|m| m.max_abs())
        .chain(r_f.iter().map(|v| v.abs()))
        .fold(0.0, f64::max)
        / (1.0 + c_scale);
    let gap = pobj - dobj;
    let gap_ok = gap.abs() <= opts.gap_tol * (1.0 + pobj.abs());
    Residuals { r_p, r_d, r_f, pobj, dobj, rel_p, rel_d, gap_ok, gap }
}

/// Nesterov-Todd scaling point `W` per block: `W Z W = X`.
fn nt_scaling(x: &CMat, z: &CMat) -> Result<CMat, SdpError> {
    let xh = HermMatrix::from_herm_part(x.clone());
    let x_eig = eig_herm(&xh).map_err(|e| SdpError::Numerical(e.to_string()))?;
    let x_sqrt = x_eig.assemble(|v| v.max(1e-300).sqrt());
    let inner = x_sqrt.mat().matmul(z).matmul(x_sqrt.mat());
    let inner_h = HermMatrix::from_herm_part(inner);
    let m_eig = eig_herm(&inner_h).map_err(|e| SdpError::Numerical(e.to_string()))?;
    let m_inv_sqrt = m_eig.assemble(|v| 1.0 / v.max(1e-300).sqrt());
    let w = x_sqrt.mat().matmul(m_inv_sqrt.mat()).matmul(x_sqrt.mat());
    Ok(w.herm_part())
}

/// Largest step `α` with `X + α Δ ⪰ 0`, via `λ_min(L⁻¹ Δ L⁻†)`.
fn max_step(x: &CMat, delta: &CMat) -> Result<f64, SdpError> {
    let xh = HermMatrix::from_herm_part(x.clone());
    let l = match chol(&xh) {
        Ok(l) => l,
        Err(_) => {
            // Nudge to the PD interior and retry once.
            let eig = eig_herm(&xh).map_err(|e| SdpError::Numerical(e.to_string()))?;
            let bumped = eig.assemble(|v| v.max(1e-12));
            chol(&bumped).map_err(|e| SdpError::Numerical(e.to_string()))?
        }
    };
    let s = tri_congruence(&l, delta);
    let sh = HermMatrix::from_herm_part(s);
    let min = eig_herm(&sh).map_err(|e| SdpError::Numerical(e.to_string()))?.lambda_min();
    if min >= 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(-1.0 / min)
    }
}

struct Direction {
    dx: Vec<CMat>,
    dz: Vec<CMat>,
    dy: Vec<f64>,
    dt: Vec<f64>,
}

struct KktFactors<'a> {
    std: &'a StdForm,
    w: Vec<CMat>,
    m_chol: RealChol,
    f_mat: Vec<f64>,
    u: Vec<Vec<f64>>,
    s_chol: Option<RealChol>,
}

impl<'a> KktFactors<'a> {
    fn build(std: &'a StdForm, it: &Iterate) -> Result<KktFactors<'a>, SdpError> {
        let m = std.rows.len();
        let w: Vec<CMat> = it
            .x
            .iter()
            .zip(&it.z)
            .map(|(x, z)| nt_scaling(x, z))
            .collect::<Result<_, _>>()?;
        // Schur complement M[k][l] = Σ_b ⟨A_kb, W_b A_lb W_b⟩.
        let mut schur = vec![0.0; m * m];
        for b in 0..std.block_dims.len() {
            let touching: Vec<(usize, &CMat)> = std
                .rows
                .iter()
                .enumerate()
                .flat_map(|(k, row)| {
                    row.terms.iter().filter(move |(bb, _)| *bb == b).map(move |(_, a)| (k, a))
                })
                .collect();
            if touching.is_empty() {
                continue;
            }
            let wb = &w[b];
            let conjugated: Vec<(usize, CMat)> = touching
                .iter()
                .map(|(k, a)| (*k, wb.matmul(a).matmul(wb)))
                .collect();
            for (k, wak) in &conjugated {
                for (l, a_l) in &touching {
                    if *l < *k {
                        continue;
                    }
                    let val = herm_inner(a_l, wak);
                    schur[k * m + l] += val;
                    if l != k {
                        schur[l * m + k] += val;
                    }
                }
            }
        }
        let m_chol = RealChol::factor_regularized(&schur, m)
            .ok_or_else(|| SdpError::Numerical("Schur complement factorization failed".into()))?;
        // Free-variable coefficient matrix F (m x n_free) and its reduced
        // Schur complement S = Fᵀ M⁻¹ F.
        let mut f_mat = vec![0.0; m * std.n_free];
        for (k, row) in std.rows.iter().enumerate() {
            for (f, g) in &row.free_terms {
                f_mat[k * std.n_free + f] += g;
            }
        }
        let mut u = Vec::with_capacity(std.n_free);
        for f in 0..std.n_free {
            let col: Vec<f64> = (0..m).map(|k| f_mat[k * std.n_free + f]).collect();
            u.push(m_chol.solve(&col));
        }
        let s_chol = if std.n_free > 0 {
            let nf = std.n_free;
            let mut s = vec![0.0; nf * nf];
            for a in 0..nf {
                for b in 0..nf {
                    let mut acc = 0.0;
                    for k in 0..m {
                        acc += f_mat[k * nf + a] * u[b][k];
                    }
                    s[a * nf + b] = acc;
                }
            }
            // Symmetrize rounding fuzz.
            for a in 0..nf {
                for b in a + 1..nf {
                    let avg = 0.5 * (s[a * nf + b] + s[b * nf + a]);
                    s[a * nf + b] = avg;
                    s[b * nf + a] = avg;
                }
            }
            Some(
                RealChol::factor_regularized(&s, nf).ok_or_else(|| {
                    SdpError::Numerical("free-variable reduction is singular".into())
                })?,
            )
        } else {
            None
        };
        Ok(KktFactors { std, w, m_chol, f_mat, u, s_chol })
    }

    /// Solve one scaled Newton system for the target `R_xz` in
    /// `ΔX + W ΔZ W = R_xz`.
    fn solve(&self, res: &Residuals, r_xz: &[CMat]) -> Direction {
        let std = self.std;
        let m = std.rows.len();
        // h = r_p - A(R_xz - W R_d W)
        let mut h = res.r_p.clone();
        let adjust: Vec<CMat> = (0..std.block_dims.len())
            .map(|b| r_xz[b].sub(&self.w[b].matmul(&res.r_d[b]).matmul(&self.w[b])))
            .collect();
        for (k, row) in std.rows.iter().enumerate() {
            for (b, a) in &row.terms {
                h[k] -= herm_inner(a, &adjust[*b]);
            }
        }
        let v1 = self.m_chol.solve(&h);
        let nf = std.n_free;
        let mut dt = vec![0.0; nf];
        let dy: Vec<f64>;
        if nf > 0 {
            let mut rhs_t = vec![0.0; nf];
            for f in 0..nf {
                let mut acc = -res.r_f[f];
                for k in 0..m {
                    acc += self.f_mat[k * nf + f] * v1[k];
                }
                rhs_t[f] = acc;
            }
            dt = self.s_chol.as_ref().unwrap().solve(&rhs_t);
            let mut dy_acc = v1;
            for f in 0..nf {
                for (k, dv) in dy_acc.iter_mut().enumerate() {
                    *dv -= self.u[f][k] * dt[f];
                }
            }
            dy = dy_acc;
        } else {
            dy = v1;
        }
        // ΔZ = R_d - A†(Δy); ΔX = R_xz - W ΔZ W.
        let mut dz: Vec<CMat> = res.r_d.clone();
        for (k, row) in std.rows.iter().enumerate() {
            if dy[k] == 0.0 {
                continue;
            }
            for (b, a) in &row.terms {
                dz[*b] = dz[*b].sub(&a.scale_re(dy[k]));
            }
        }
        let dx: Vec<CMat> = (0..std.block_dims.len())
            .map(|b| r_xz[b].sub(&self.w[b].matmul(&dz[b]).matmul(&self.w[b])).herm_part())
            .collect();
        let dz = dz.into_iter().map(|m| m.herm_part()).collect();
        Direction { dx, dz, dy, dt }
    }
}

/// Solve a conic program with a Nesterov-Todd scaled predictor-corrector
/// interior-point method.
pub fn solve(program: &ConicProgram, options: &SolveOptions) -> Result<ConicSolution, SdpError> {
    program.validate()?;
    let std = canonicalize(program);
    let n_blocks = std.block_dims.len();
    let m = std.rows.len();
    let total_dim: usize = std.block_dims.iter().sum();

    if m == 0 {
        return solve_unconstrained(program, &std);
    }

    // Initial iterate: identity-scaled blocks sized to the data, warm-started
    // primal blocks when provided.
    let rhs_scale = std.rows.iter().map(|r| r.rhs.abs()).fold(0.0, f64::max);
    let c_scale = std
        .c_blocks
        .iter()
        .map(|c| c.max_abs())
        .chain(std.c_free.iter().map(|c| c.abs()))
        .fold(0.0, f64::max);
    let xi = 1.0 + rhs_scale;
    let eta = 1.0 + c_scale;
    let mut it = Iterate {
        x: std.block_dims.iter().map(|&d| CMat::identity(d).scale_re(xi)).collect(),
        z: std.block_dims.iter().map(|&d| CMat::identity(d).scale_re(eta)).collect(),
        y: vec![0.0; m],
        t: vec![0.0; std.n_free],
    };
    if let Some(ws) = program.warm_start() {
        for (b, block) in ws.blocks.iter().enumerate() {
            let eig = eig_herm(block).map_err(|e| SdpError::Numerical(e.to_string()))?;
            let floor = 0.1 * (1.0 + eig.lambda_max().abs());
            it.x[b] = eig.assemble(|v| v.max(floor)).into_mat();
        }
        it.t.copy_from_slice(&ws.free);
    }

    let mut status = SolveStatus::MaxIter;
    let mut iterations = 0;
    let mut hard_failure = false;
    // Keep the best iterate seen: the double-precision endgame can destroy
    // an essentially converged iterate, in which case the best one is
    // restored and judged against the tolerances.
    let mut best: Option<(Iterate, f64)> = None;
    let mut last = compute_residuals(&std, &it, options);
    for iter in 0..options.max_iter {
        iterations = iter;
        last = compute_residuals(&std, &it, options);
        if last.converged(options) {
            status = SolveStatus::Optimal;
            break;
        }
        if !last.pobj.is_finite() || !last.dobj.is_finite() {
            hard_failure = true;
            break;
        }
        let metric = last.metric(options);
        let best_metric = best.as_ref().map(|(_, m)| *m).unwrap_or(f64::INFINITY);
        if metric < best_metric {
            best = Some((it.clone(), metric));
        } else if metric > 1e4 * best_metric {
            // The endgame went unstable; stop and fall back to the best.
            break;
        }
        // Divergence guard for genuinely unbounded/infeasible inputs.
        let x_scale = it.x.iter().map(|x| x.max_abs()).fold(0.0, f64::max);
        if x_scale > 1e14 * (1.0 + rhs_scale) {
            status = if last.rel_p <= options.feas_tol {
                SolveStatus::Unbounded
            } else {
                SolveStatus::Infeasible
            };
            break;
        }

        let mu: f64 = it
            .x
            .iter()
            .zip(&it.z)
            .map(|(x, z)| herm_inner(x, z))
            .sum::<f64>()
            / total_dim as f64;
        if mu.abs() < 1e-15 * (1.0 + rhs_scale + c_scale) {
            // Machine-precision floor for the complementarity.
            break;
        }

        let factors = match KktFactors::build(&std, &it) {
            Ok(f) => f,
            Err(e) => {
                if std::env::var("SDG_IPM_TRACE").is_ok() { eprintln!("it {iter:3} FACTOR FAIL: {e}"); }
                hard_failure = true;
                break;
            }
        };

        // Predictor: affine direction (σ = 0).
        let r_xz_aff: Vec<CMat> = it.x.iter().map(|x| x.scale_re(-1.0)).collect();
        let aff = factors.solve(&last, &r_xz_aff);
        let alpha_p_aff = block_step(&it.x, &aff.dx)?;
        let alpha_d_aff = block_step(&it.z, &aff.dz)?;
        let mut mu_aff = 0.0;
        for b in 0..n_blocks {
            let xa = it.x[b].add(&aff.dx[b].scale_re(alpha_p_aff));
            let za = it.z[b].add(&aff.dz[b].scale_re(alpha_d_aff));
            mu_aff += herm_inner(&xa, &za);
        }
        mu_aff = (mu_aff / total_dim as f64).max(0.0);
        // Mehrotra heuristic with an infeasibility floor: while the iterate
        // is more infeasible than it is suboptimal, keep σ high so that
        // complementarity cannot outrun feasibility.
        let gap_rel = last.gap.abs() / (1.0 + last.pobj.abs());
        let infeas = last.rel_p.max(last.rel_d);
        let sigma_floor = if infeas > gap_rel {
            (infeas / (infeas + gap_rel + 1e-300)).min(0.9)
        } else {
            1e-10
        };
        let sigma = ((mu_aff / mu).powi(3)).clamp(1e-10, 0.9).max(sigma_floor);

        // Corrector: centering direction with the adaptive σ. The inverse is
        // spectral with an eigenvalue floor so boundary iterates cannot fail.
        let target = sigma * mu;
        let mut r_xz = Vec::with_capacity(n_blocks);
        for b in 0..n_blocks {
            let zh = HermMatrix::from_herm_part(it.z[b].clone());
            let z_eig = eig_herm(&zh).map_err(|e| SdpError::Numerical(e.to_string()))?;
            let z_inv = z_eig.assemble(|v| 1.0 / v.max(1e-300));
            r_xz.push(z_inv.mat().scale_re(target).sub(&it.x[b]).herm_part());
        }
        let dir = factors.solve(&last, &r_xz);
        let alpha_p = (0.98 * block_step(&it.x, &dir.dx)?).min(1.0);
        let alpha_d = (0.98 * block_step(&it.z, &dir.dz)?).min(1.0);
        if std::env::var("SDG_IPM_TRACE").is_ok() {
            eprintln!("it {iter:3} mu {mu:9.2e} sig {sigma:8.2e} ap {alpha_p:7.2e} ad {alpha_d:7.2e} rp {:9.2e} rd {:9.2e} gap {:10.2e} metric {:9.2e}", last.rel_p, last.rel_d, last.gap, last.metric(options));
        }

        for b in 0..n_blocks {
            it.x[b] = it.x[b].add(&dir.dx[b].scale_re(alpha_p)).herm_part();
            it.z[b] = it.z[b].add(&dir.dz[b].scale_re(alpha_d)).herm_part();
        }
        for (tv, dv) in it.t.iter_mut().zip(&dir.dt) {
            *tv += alpha_p * dv;
        }
        for (yv, dv) in it.y.iter_mut().zip(&dir.dy) {
            *yv += alpha_d * dv;
        }
        iterations = iter + 1;
    }

    if status == SolveStatus::MaxIter {
        // Judge the better of the final and the best stored iterate; a late
        // numerical breakdown does not disqualify an already converged one.
        last = compute_residuals(&std, &it, options);
        if let Some((best_it, best_metric)) = best {
            if !last.metric(options).is_finite() || last.metric(options) > best_metric {
                it = best_it;
                last = compute_residuals(&std, &it, options);
            }
        }
        if last.converged(options) {
            status = SolveStatus::Optimal;
        } else if hard_failure {
            status = SolveStatus::NumericalFailure;
        }
    }

    Ok(assemble_solution(program, &std, &it, &last, status, iterations))
}

fn block_step(x: &[CMat], dx: &[CMat]) -> Result<f64, SdpError> {
    let mut alpha = f64::INFINITY;
    for (xb, db) in x.iter().zip(dx) {
        alpha = alpha.min(max_step(xb, db)?);
    }
    Ok(alpha)
}

fn solve_unconstrained(program: &ConicProgram, std: &StdForm) -> Result<ConicSolution, SdpError> {
    // No constraints: the optimum is 0 at X = 0, t = 0 when every objective
    // block is PSD (internal min sense) and free objectives vanish;
    // otherwise the program is unbounded.
    let mut bounded = std.c_free.iter().all(|&c| c == 0.0);
    for c in &std.c_blocks {
        let h = HermMatrix::from_herm_part(c.clone());
        if eig_herm(&h).map_err(|e| SdpError::Numerical(e.to_string()))?.lambda_min() < -1e-12 {
            bounded = false;
        }
    }
    let status = if bounded { SolveStatus::Optimal } else { SolveStatus::Unbounded };
    let primal = PrimalPoint {
        blocks: program.psd_blocks().iter().map(|&d| HermMatrix::zero(d)).collect(),
        free: vec![0.0; program.free_vars()],
    };
    Ok(ConicSolution {
        status,
        primal,
        dual_values: Vec::new(),
        primal_objective: 0.0,
        dual_objective: 0.0,
        gap: 0.0,
        primal_residual: 0.0,
        dual_residual: 0.0,
        iterations: 0,
    })
}

fn assemble_solution(
    program: &ConicProgram,
    std: &StdForm,
    it: &Iterate,
    res: &Residuals,
    status: SolveStatus,
    iterations: usize,
) -> ConicSolution {
    let blocks: Vec<HermMatrix> = it.x[..std.n_user_blocks]
        .iter()
        .map(|x| HermMatrix::from_herm_part(x.clone()))
        .collect();
    let primal = PrimalPoint { blocks, free: it.t.clone() };

    // Dual multipliers: equality rows carry their y directly (sign-flipped
    // for Max programs); an LMI's PSD multiplier is the dual slack of its
    // slack block, Z_S = -Σ_q y_q B_q.
    let mut dual_values = Vec::with_capacity(program.constraints().len());
    for (cidx, c) in program.constraints().iter().enumerate() {
        match c {
            Constraint::Eq { .. } => {
                let y = std
                    .rows
                    .iter()
                    .zip(&it.y)
                    .find_map(|(row, y)| match row.origin {
                        RowOrigin::Eq { constraint } if constraint == cidx => Some(*y),
                        _ => None,
                    })
                    .unwrap_or(0.0);
                dual_values.push(DualValue::Eq(std.flip * y));
            }
            Constraint::Lmi { .. } => {
                let slack = std.lmi_slack[cidx].expect("LMI has a slack block");
                dual_values.push(DualValue::Lmi(HermMatrix::from_herm_part(
                    it.z[slack].clone(),
                )));
            }
        }
    }

    ConicSolution {
        status,
        primal,
        dual_values,
        primal_objective: std.flip * res.pobj,
        dual_objective: std.flip * res.dobj,
        gap: res.gap,
        primal_residual: res.rel_p,
        dual_residual: res.rel_d,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::super::program::{ConicProgram, Constraint, DualValue, Sense, SolveOptions, SolveStatus};
    use super::*;
    use crate::linalg::{inner, random_herm, random_psd};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn solve_default(p: &ConicProgram) -> super::super::ConicSolution {
        solve(p, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn lambda_max_program() {
        // max ⟨diag(1,0), X⟩ s.t. tr X = 1, X ⪰ 0: optimal value 1 at diag(1,0).
        let mut p = ConicProgram::maximize();
        let x = p.add_psd_block(2);
        p.set_block_objective(x, HermMatrix::diag(&[1.0, 0.0]));
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(x, HermMatrix::identity(2))],
            free_terms: vec![],
            rhs: 1.0,
        });
        let sol = solve(&p, &SolveOptions::tight()).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.primal_objective - 1.0).abs() < 1e-6, "value {}", sol.primal_objective);
        assert!(sol.primal.blocks[0].max_abs_diff(&HermMatrix::diag(&[1.0, 0.0])) < 1e-5);
    }

    #[test]
    fn eigenvalue_bound_program() {
        // min t s.t. t·I ⪰ diag(3,1,-2): t = 3.
        let mut p = ConicProgram::minimize();
        let t = p.add_free_var();
        p.set_free_objective(t, 1.0);
        p.add_constraint(Constraint::Lmi {
            dim: 3,
            block_maps: vec![],
            free_terms: vec![(t, HermMatrix::scaled_identity(3, -1.0))],
            rhs: HermMatrix::diag(&[3.0, 1.0, -2.0]).scale(-1.0),
        });
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.primal.free[0] - 3.0).abs() < 1e-6, "t = {}", sol.primal.free[0]);
    }

    #[test]
    fn random_feasible_pair_closes_gap() {
        // Construct a primal/dual strictly feasible random program:
        // b = A(X0) for X0 ≻ 0 and C = A†(y0) + Z0 for Z0 ≻ 0.
        let mut rng = ChaCha20Rng::seed_from_u64(91);
        for trial in 0..5 {
            let dim = 3;
            let n_cons = 4;
            let a_mats: Vec<HermMatrix> = (0..n_cons).map(|_| random_herm(dim, &mut rng)).collect();
            let x0 = random_psd(dim, &mut rng).shift(0.5);
            let z0 = random_psd(dim, &mut rng).shift(0.5);
            let y0: Vec<f64> = (0..n_cons).map(|k| 0.3 * (k as f64 - 1.5)).collect();
            let mut c = z0.clone();
            for (a, y) in a_mats.iter().zip(&y0) {
                c = c.add(&a.scale(*y));
            }
            let mut p = ConicProgram::minimize();
            let x = p.add_psd_block(dim);
            p.set_block_objective(x, c);
            for (a, _) in a_mats.iter().zip(&y0) {
                p.add_constraint(Constraint::Eq {
                    block_terms: vec![(x, a.clone())],
                    free_terms: vec![],
                    rhs: inner(a, &x0).unwrap(),
                });
            }
            let sol = solve_default(&p);
            assert_eq!(sol.status, SolveStatus::Optimal, "trial {trial}");
            assert!((sol.primal_objective - sol.dual_objective).abs() <= 1e-6 * (1.0 + sol.primal_objective.abs()));
            // Weak duality in min form.
            assert!(sol.primal_objective >= sol.dual_objective - 1e-8);
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let mut rng = ChaCha20Rng::seed_from_u64(92);
        let a = random_herm(3, &mut rng);
        let mut p = ConicProgram::maximize();
        let x = p.add_psd_block(3);
        p.set_block_objective(x, a);
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(x, HermMatrix::identity(3))],
            free_terms: vec![],
            rhs: 1.0,
        });
        let s1 = solve_default(&p);
        let s2 = solve_default(&p);
        assert_eq!(s1.primal_objective, s2.primal_objective);
        assert_eq!(s1.iterations, s2.iterations);
        assert!(s1.primal.blocks[0].max_abs_diff(&s2.primal.blocks[0]) == 0.0);
    }

    #[test]
    fn lmi_dual_multiplier_is_psd() {
        let mut p = ConicProgram::minimize();
        let t = p.add_free_var();
        p.set_free_objective(t, 1.0);
        p.add_constraint(Constraint::Lmi {
            dim: 2,
            block_maps: vec![],
            free_terms: vec![(t, HermMatrix::scaled_identity(2, -1.0))],
            rhs: HermMatrix::diag(&[2.0, -1.0]).scale(-1.0),
        });
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        match &sol.dual_values[0] {
            DualValue::Lmi(y) => {
                let min_eig = crate::linalg::eig_herm(y).unwrap().lambda_min();
                assert!(min_eig >= -1e-8, "LMI multiplier not PSD: {min_eig}");
                // Stationarity in t: tr(Y) = 1.
                assert!((y.trace() - 1.0).abs() < 1e-6);
            }
            _ => panic!("expected an LMI dual"),
        }
    }

    #[test]
    fn unconstrained_programs() {
        let mut p = ConicProgram::minimize();
        let x = p.add_psd_block(2);
        p.set_block_objective(x, HermMatrix::diag(&[1.0, 2.0]));
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.primal_objective, 0.0);

        let mut p = ConicProgram::minimize();
        let x = p.add_psd_block(2);
        p.set_block_objective(x, HermMatrix::diag(&[1.0, -2.0]));
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Unbounded);
    }

    #[test]
    fn validates_malformed_programs() {
        let mut p = ConicProgram::minimize();
        let x = p.add_psd_block(2);
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(x, HermMatrix::identity(3))],
            free_terms: vec![],
            rhs: 1.0,
        });
        assert!(solve(&p, &SolveOptions::default()).is_err());
    }

    #[test]
    fn warm_start_margins_are_strict() {
        use crate::game::pairwise_zero_sum_random;
        let game = pairwise_zero_sum_random(3, &[2, 2, 2], 1.0, 19);
        let p = super::super::assemble_equilibrium_primal(&game).unwrap();
        let ws = p.warm_start().unwrap();
        let margins = p.point_margins(ws);
        assert!(margins.max_eq_residual <= 1e-12);
        assert!(margins.min_lmi_margin > 0.0, "LMI margin {}", margins.min_lmi_margin);
        assert!(margins.min_block_eigenvalue > 0.0);

        let d = super::super::assemble_equilibrium_dual(&game).unwrap();
        let ws = d.warm_start().unwrap();
        let margins = d.point_margins(ws);
        assert!(margins.max_eq_residual <= 1e-12);
        assert!(margins.min_lmi_margin > 0.0);
        assert!(margins.min_block_eigenvalue > 0.0);
    }

    #[test]
    fn max_sense_eq_dual_sign() {
        // max ⟨I, X⟩ s.t. tr X = 1: optimum 1, equality multiplier 1 in the
        // max-sense Lagrangian.
        let mut p = ConicProgram::maximize();
        let x = p.add_psd_block(2);
        p.set_block_objective(x, HermMatrix::identity(2));
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(x, HermMatrix::identity(2))],
            free_terms: vec![],
            rhs: 1.0,
        });
        let sol = solve_default(&p);
        assert_eq!(sol.status, SolveStatus::Optimal);
        match sol.dual_values[0] {
            DualValue::Eq(y) => assert!((y - 1.0).abs() < 1e-6, "eq dual {y}"),
            _ => panic!("expected an Eq dual"),
        }
    }
}
