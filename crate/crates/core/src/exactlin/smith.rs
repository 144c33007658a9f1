use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Full diagonal of `d`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    /// Nonzero diagonal entries of `d`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form. Pivots on the nonzero entry of least absolute value in
/// the active block, ties broken by lowest (row, col).
pub fn smith_form(a: &IntMatrix) -> SmithForm {
    let calc = SmithCalc::run(a);
    SmithForm {
        u: calc.u,
        d: calc.d,
        v: calc.v,
    }
}

/// Smith form together with `u^-1` and `v^-1`.
pub(crate) fn smith_form_with_inverses(a: &IntMatrix) -> (SmithForm, IntMatrix, IntMatrix) {
    let calc = SmithCalc::run(a);
    (
        SmithForm {
            u: calc.u,
            d: calc.d,
            v: calc.v,
        },
        calc.u_inv,
        calc.v_inv,
    )
}

struct SmithCalc {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithCalc {
    fn run(a: &IntMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut calc = SmithCalc {
            d: a.clone(),
            u: IntMatrix::identity(m),
            u_inv: IntMatrix::identity(m),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
        };
        for t in 0..m.min(n) {
            if !calc.reduce_block(t) {
                break;
            }
        }
        calc
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.d[b].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` of the active block. Returns false once the
    /// block is entirely zero.
    fn reduce_block(&mut self, t: usize) -> bool {
        let (m, n) = (self.d.rows(), self.d.cols());
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.d[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..m {
                let q = &self.d[(i, t)] / &p;
                self.add_row(i, t, &-q);
                clean &= self.d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = &self.d[(t, j)] / &p;
                self.add_col(j, t, &-q);
                clean &= self.d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&self.d[(i, j)] % &p).is_zero()));
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::from(1)),
                None => {
                    if p.is_negative() {
                        self.negate_row(t);
                    }
                    return true;
                }
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    // col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
        self.v_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}
