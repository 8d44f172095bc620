use rustc_hash::FxHashSet;

use super::TwistContext;

/// The polytope `Pi`, the convex hull of `theta - w theta` over `W`.
///
/// It is cut out by `<w varpi_i, x - (theta - w theta)> >= 0`. With
/// `u = w^{-1}` the left side is coordinate `i` of `u x + theta - u theta`,
/// so each inequality is an integer row of `M_u` and an integer bound.
#[derive(Clone, Debug)]
pub struct Polytope {
    rank: usize,
    vertices: Vec<Vec<i64>>,
    inequalities: Vec<(Vec<i64>, i64)>,
}

impl Polytope {
    pub fn new(ctx: &TwistContext) -> Self {
        let group = ctx.group();
        let r = ctx.rank();
        let mut seen = FxHashSet::default();
        let mut inequalities = Vec::new();
        let mut vertices = Vec::with_capacity(group.len());
        for u in 0..group.len() {
            let shift = ctx.theta_minus_w_theta(u);
            let m = group.element(u).matrix();
            for i in 0..r {
                let row = m[i * r..(i + 1) * r].to_vec();
                // row . x + shift_i >= 0
                let ineq = (row, -shift[i]);
                if seen.insert(ineq.clone()) {
                    inequalities.push(ineq);
                }
            }
            vertices.push(shift);
        }
        inequalities.sort();
        Polytope {
            rank: r,
            vertices,
            inequalities,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `theta - w theta`, indexed like the Weyl group elements.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Distinct inequalities `row . x >= bound`.
    pub fn inequalities(&self) -> &[(Vec<i64>, i64)] {
        &self.inequalities
    }

    pub fn contains(&self, lambda: &[i64]) -> bool {
        self.first_violation(lambda).is_none()
    }

    /// An inequality violated by `lambda`, if any.
    pub fn first_violation(&self, lambda: &[i64]) -> Option<&(Vec<i64>, i64)> {
        self.inequalities.iter().find(|(row, bound)| {
            row.iter().zip(lambda).map(|(a, b)| a * b).sum::<i64>() < *bound
        })
    }

    /// Integer bounding box `[0, max_i]` per coordinate; the vertex `0` is
    /// the minimum since `theta - w theta` is a nonnegative combination of roots.
    pub fn bounding_box(&self) -> Vec<i64> {
        (0..self.rank)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap_or(0))
            .collect()
    }

    /// All lattice points of the polytope.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let hi = self.bounding_box();
        let mut out = Vec::new();
        let mut p = vec![0i64; self.rank];
        loop {
            if self.contains(&p) {
                out.push(p.clone());
            }
            let mut k = 0;
            loop {
                if k == self.rank {
                    return out;
                }
                p[k] += 1;
                if p[k] <= hi[k] {
                    break;
                }
                p[k] = 0;
                k += 1;
            }
        }
    }
}
