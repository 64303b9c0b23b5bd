//! Standard-form conic programs over Hermitian PSD blocks and free scalars.

use serde::Serialize;

use crate::linalg::{eig_herm, herm_basis, inner, HermMatrix, LinMap};

use super::SdpError;

/// Optimization sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Min,
    Max,
}

/// A constraint over the program variables.
///
/// `Eq` is a scalar equality `Σ_b ⟨A_b, X_b⟩ + Σ_f g_f t_f = rhs`. `Lmi` is a
/// linear matrix inequality `Σ_b L_b(X_b) + Σ_f t_f H_f ⪯ RHS` where each
/// `L_b` is a linear map into the constraint's Hermitian space.
#[derive(Clone, Debug)]
pub enum Constraint {
    Eq {
        block_terms: Vec<(usize, HermMatrix)>,
        free_terms: Vec<(usize, f64)>,
        rhs: f64,
    },
    Lmi {
        dim: usize,
        block_maps: Vec<(usize, LinMap)>,
        free_terms: Vec<(usize, HermMatrix)>,
        rhs: HermMatrix,
    },
}

/// A primal point: one Hermitian matrix per PSD block plus free scalars.
#[derive(Clone, Debug)]
pub struct PrimalPoint {
    pub blocks: Vec<HermMatrix>,
    pub free: Vec<f64>,
}

/// Worst-case constraint margins of a primal point.
#[derive(Clone, Debug)]
pub struct PointMargins {
    /// Max `|lhs - rhs|` over equality constraints.
    pub max_eq_residual: f64,
    /// Min over LMI constraints of `λ_min(RHS - Expr)`; positive means every
    /// LMI holds strictly. `+inf` when there are no LMIs.
    pub min_lmi_margin: f64,
    /// Min over blocks of `λ_min(X_b)`; positive means strictly interior.
    pub min_block_eigenvalue: f64,
}

/// A conic program: Hermitian PSD blocks, free scalar variables, a linear
/// objective, and equality / LMI constraints.
#[derive(Clone, Debug)]
pub struct ConicProgram {
    pub sense: Sense,
    psd_blocks: Vec<usize>,
    free_vars: usize,
    obj_blocks: Vec<Option<HermMatrix>>,
    obj_free: Vec<f64>,
    constraints: Vec<Constraint>,
    warm_start: Option<PrimalPoint>,
}

impl ConicProgram {
    pub fn new(sense: Sense) -> Self {
        ConicProgram {
            sense,
            psd_blocks: Vec::new(),
            free_vars: 0,
            obj_blocks: Vec::new(),
            obj_free: Vec::new(),
            constraints: Vec::new(),
            warm_start: None,
        }
    }

    pub fn minimize() -> Self {
        Self::new(Sense::Min)
    }

    pub fn maximize() -> Self {
        Self::new(Sense::Max)
    }

    /// Add a PSD block of the given dimension; returns its index.
    pub fn add_psd_block(&mut self, dim: usize) -> usize {
        assert!(dim >= 1, "block dimension must be positive");
        self.psd_blocks.push(dim);
        self.obj_blocks.push(None);
        self.psd_blocks.len() - 1
    }

    /// Add a free scalar variable; returns its index.
    pub fn add_free_var(&mut self) -> usize {
        self.free_vars += 1;
        self.obj_free.push(0.0);
        self.free_vars - 1
    }

    pub fn set_block_objective(&mut self, block: usize, coeff: HermMatrix) {
        assert_eq!(coeff.dim(), self.psd_blocks[block], "objective dimension mismatch");
        self.obj_blocks[block] = Some(coeff);
    }

    pub fn set_free_objective(&mut self, var: usize, coeff: f64) {
        self.obj_free[var] = coeff;
    }

    pub fn add_constraint(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn set_warm_start(&mut self, point: PrimalPoint) {
        self.warm_start = Some(point);
    }

    pub fn psd_blocks(&self) -> &[usize] {
        &self.psd_blocks
    }

    pub fn free_vars(&self) -> usize {
        self.free_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective_blocks(&self) -> &[Option<HermMatrix>] {
        &self.obj_blocks
    }

    pub fn objective_free(&self) -> &[f64] {
        &self.obj_free
    }

    pub fn warm_start(&self) -> Option<&PrimalPoint> {
        self.warm_start.as_ref()
    }

    /// Check internal dimension consistency.
    pub fn validate(&self) -> Result<(), SdpError> {
        for (idx, c) in self.constraints.iter().enumerate() {
            match c {
                Constraint::Eq { block_terms, free_terms, .. } => {
                    for (b, a) in block_terms {
                        if *b >= self.psd_blocks.len() || a.dim() != self.psd_blocks[*b] {
                            return Err(SdpError::Malformed(format!(
                                "constraint {idx}: bad block term for block {b}"
                            )));
                        }
                    }
                    for (f, _) in free_terms {
                        if *f >= self.free_vars {
                            return Err(SdpError::Malformed(format!(
                                "constraint {idx}: free variable {f} out of range"
                            )));
                        }
                    }
                }
                Constraint::Lmi { dim, block_maps, free_terms, rhs } => {
                    if rhs.dim() != *dim {
                        return Err(SdpError::Malformed(format!(
                            "constraint {idx}: LMI rhs dimension mismatch"
                        )));
                    }
                    for (b, map) in block_maps {
                        if *b >= self.psd_blocks.len()
                            || map.dim_in() != self.psd_blocks[*b]
                            || map.dim_out() != *dim
                        {
                            return Err(SdpError::Malformed(format!(
                                "constraint {idx}: bad LMI map for block {b}"
                            )));
                        }
                    }
                    for (f, h) in free_terms {
                        if *f >= self.free_vars || h.dim() != *dim {
                            return Err(SdpError::Malformed(format!(
                                "constraint {idx}: bad LMI free term for variable {f}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Objective value at a primal point, in the program's own sense.
    pub fn objective_at(&self, point: &PrimalPoint) -> f64 {
        let mut val = 0.0;
        for (b, coeff) in self.obj_blocks.iter().enumerate() {
            if let Some(c) = coeff {
                val += inner(c, &point.blocks[b]).expect("dims agree");
            }
        }
        for (f, c) in self.obj_free.iter().enumerate() {
            val += c * point.free[f];
        }
        val
    }

    /// Constraint margins at a primal point; used to confirm strict
    /// feasibility of warm starts.
    pub fn point_margins(&self, point: &PrimalPoint) -> PointMargins {
        let mut max_eq = 0.0f64;
        let mut min_lmi = f64::INFINITY;
        for c in &self.constraints {
            match c {
                Constraint::Eq { block_terms, free_terms, rhs } => {
                    let mut lhs = 0.0;
                    for (b, a) in block_terms {
                        lhs += inner(a, &point.blocks[*b]).expect("dims agree");
                    }
                    for (f, g) in free_terms {
                        lhs += g * point.free[*f];
                    }
                    max_eq = max_eq.max((lhs - rhs).abs());
                }
                Constraint::Lmi { dim, block_maps, free_terms, rhs } => {
                    let mut expr = HermMatrix::zero(*dim);
                    for (b, map) in block_maps {
                        expr = expr.add(&map.apply(&point.blocks[*b]));
                    }
                    for (f, h) in free_terms {
                        expr = expr.add(&h.scale(point.free[*f]));
                    }
                    let slack = rhs.sub(&expr);
                    let margin = eig_herm(&slack).expect("Hermitian").lambda_min();
                    min_lmi = min_lmi.min(margin);
                }
            }
        }
        let min_block_eigenvalue = point
            .blocks
            .iter()
            .map(|b| eig_herm(b).expect("Hermitian").lambda_min())
            .fold(f64::INFINITY, f64::min);
        PointMargins { max_eq_residual: max_eq, min_lmi_margin: min_lmi, min_block_eigenvalue }
    }

    /// Debug dump of the program in a documented JSON form, for diffing
    /// against external solvers: blocks, free count, objective, and every
    /// constraint with matrices serialized as nested `[re, im]` arrays.
    pub fn to_debug_json(&self) -> serde_json::Value {
        use crate::linalg::cmat_to_nested;
        let cmat = |h: &HermMatrix| serde_json::json!(cmat_to_nested(h.mat()));
        let constraints: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .map(|c| match c {
                Constraint::Eq { block_terms, free_terms, rhs } => serde_json::json!({
                    "type": "eq",
                    "block_terms": block_terms.iter().map(|(b, a)| serde_json::json!({"block": b, "matrix": cmat(a)})).collect::<Vec<_>>(),
                    "free_terms": free_terms,
                    "rhs": rhs,
                }),
                Constraint::Lmi { dim, block_maps, free_terms, rhs } => serde_json::json!({
                    "type": "lmi",
                    "dim": dim,
                    "block_maps": block_maps.iter().map(|(b, map)| serde_json::json!({
                        "block": b,
                        "basis_images": map.images().iter().map(&cmat).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "free_terms": free_terms.iter().map(|(f, h)| serde_json::json!({"var": f, "matrix": cmat(h)})).collect::<Vec<_>>(),
                    "rhs": cmat(rhs),
                }),
            })
            .collect();
        serde_json::json!({
            "sense": match self.sense { Sense::Min => "min", Sense::Max => "max" },
            "psd_blocks": self.psd_blocks,
            "free_vars": self.free_vars,
            "objective_blocks": self.obj_blocks.iter().map(|c| c.as_ref().map(&cmat)).collect::<Vec<_>>(),
            "objective_free": self.obj_free,
            "constraints": constraints,
        })
    }
}

/// Solver status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    MaxIter,
    NumericalFailure,
}

/// Solver options. Defaults: feasibility `1e-7`, gap `1e-6`, 200 iterations.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub feas_tol: f64,
    pub gap_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { feas_tol: 1e-7, gap_tol: 1e-6, max_iter: 200 }
    }
}

impl SolveOptions {
    /// Tight tolerances for pipelines that feed certified equilibria into
    /// downstream constructions.
    pub fn tight() -> Self {
        SolveOptions { feas_tol: 5e-9, gap_tol: 1e-8, max_iter: 300 }
    }
}

/// Dual multiplier of one constraint: a scalar for equalities, a PSD
/// Hermitian matrix for LMIs.
#[derive(Clone, Debug)]
pub enum DualValue {
    Eq(f64),
    Lmi(HermMatrix),
}

/// Primal/dual solution with certificates.
#[derive(Clone, Debug)]
pub struct ConicSolution {
    pub status: SolveStatus,
    /// Per-block Hermitian values and free scalars, in program order.
    pub primal: PrimalPoint,
    /// One multiplier per constraint, in program order.
    pub dual_values: Vec<DualValue>,
    /// Objective values in the program's sense.
    pub primal_objective: f64,
    pub dual_objective: f64,
    /// `primal_objective - dual_objective`.
    pub gap: f64,
    /// Relative primal and dual feasibility residuals at termination.
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
}

impl ConicSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Orthonormal Hermitian basis shared by the LMI expansion and the dual
/// reconstruction.
pub(crate) fn lmi_basis(dim: usize) -> Vec<HermMatrix> {
    herm_basis(dim)
}
