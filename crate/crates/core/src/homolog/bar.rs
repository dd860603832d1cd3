use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::repmod::ModuleFamily;

/// Normalized bar cochains for a family of right modules.
///
/// The algebra is rewritten on an adapted basis `1, a_1, ..., a_{n-1}`: the unit together with
/// every original basis element except one (`dropped`). Cochains are functions on
/// `M_i (x) Abar^{(x) n}` with `Abar = A / k 1`, so unit components of products are discarded.
#[derive(Clone, Debug)]
pub struct BarComplex {
    field: Field,
    n: usize,
    dropped: usize,
    unit: Vec<Scalar>,
    /// Original basis index of each nonunit adapted element.
    nonunit: Vec<usize>,
    /// `a_s a_t` in nonunit coordinates, sparse.
    prod: Vec<Vec<(usize, Scalar)>>,
    /// `act[i][s]` is the matrix of `a_s` on member `i`.
    act: Vec<Vec<Matrix>>,
    dims: Vec<usize>,
}

/// A normalized bar cochain `M_source (x) Abar^{(x) degree} -> M_target`.
///
/// Value layout: `((tuple * d_source + m) * d_target + out)`, tuples in base `n - 1` with the
/// first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub values: Vec<Scalar>,
}

impl Cochain {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}

impl BarComplex {
    pub fn new(algebra: &FinDimAlgebra, family: &ModuleFamily) -> BarComplex {
        let f = algebra.field();
        let n = algebra.dim();
        let unit = algebra.unit().to_vec();
        let dropped = unit.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
        let nonunit: Vec<usize> = (0..n).filter(|&j| j != dropped).collect();
        let mut bc =
            BarComplex { field: f, n, dropped, unit, nonunit, prod: Vec::new(), act: Vec::new(), dims: family.dims() };
        let nb = bc.nonunit.len();
        let mut prod = Vec::with_capacity(nb * nb);
        for s in 0..nb {
            for t in 0..nb {
                let (_, coords) = bc.split(algebra.product(bc.nonunit[s], bc.nonunit[t]));
                prod.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        bc.prod = prod;
        bc.act = family.members().iter().map(|m| bc.nonunit.iter().map(|&j| m.action(j).clone()).collect()).collect();
        bc
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of nonunit adapted basis elements.
    pub fn nb(&self) -> usize {
        self.nonunit.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn members(&self) -> usize {
        self.dims.len()
    }

    /// Original basis index of the nonunit adapted element `s`.
    pub fn nonunit_index(&self, s: usize) -> usize {
        self.nonunit[s]
    }

    pub fn dropped(&self) -> usize {
        self.dropped
    }

    pub fn action(&self, member: usize, s: usize) -> &Matrix {
        &self.act[member][s]
    }

    /// Nonzero terms of `a_s a_t` (unit component dropped).
    pub fn product(&self, s: usize, t: usize) -> &[(usize, Scalar)] {
        &self.prod[s * self.nb() + t]
    }

    /// Writes `x` (original coordinates) as `c 1 + sum_s y_s a_s`.
    pub fn split(&self, x: &[Scalar]) -> (Scalar, Vec<Scalar>) {
        let k = self.dropped;
        let scale = &x[k] / &self.unit[k];
        let coords = self.nonunit.iter().map(|&j| &x[j] - &(&scale * &self.unit[j])).collect();
        (scale, coords)
    }

    pub fn tuples(&self, degree: usize) -> usize {
        self.nb().pow(degree as u32)
    }

    pub fn cochain_len(&self, degree: usize, i: usize, j: usize) -> usize {
        self.tuples(degree) * self.dims[i] * self.dims[j]
    }

    pub fn zero_cochain(&self, degree: usize, i: usize, j: usize) -> Cochain {
        Cochain { degree, source: i, target: j, values: vec![self.field.zero(); self.cochain_len(degree, i, j)] }
    }

    pub fn cochain(&self, degree: usize, i: usize, j: usize, values: Vec<Scalar>) -> Result<Cochain> {
        if values.len() != self.cochain_len(degree, i, j) {
            return Err(Error::DimensionMismatch(format!(
                "cochain of degree {degree} on ({i}, {j}) needs {} values, got {}",
                self.cochain_len(degree, i, j),
                values.len()
            )));
        }
        Ok(Cochain { degree, source: i, target: j, values })
    }

    /// The coefficients expressing coordinate `(tuple, m, out)` of `df` in terms of the coordinates
    /// of a degree-`degree` cochain `f` on `(i, j)`.
    pub fn differential_row(
        &self,
        degree: usize,
        i: usize,
        j: usize,
        tuple: usize,
        m: usize,
        out: usize,
    ) -> Vec<(usize, Scalar)> {
        let nb = self.nb();
        let (di, dj) = (self.dims[i], self.dims[j]);
        let args = self.digits(tuple, degree + 1);
        let idx = |t: usize, m: usize, o: usize| (t * di + m) * dj + o;
        let mut row: Vec<(usize, Scalar)> = Vec::new();
        // f(m a_1 (x) a_2 ... )
        let rest: usize = args[1..].iter().fold(0, |acc, &s| acc * nb + s);
        let a1 = &self.act[i][args[0]];
        for m2 in 0..di {
            let c = &a1[(m, m2)];
            if !c.is_zero() {
                row.push((idx(rest, m2, out), c.clone()));
            }
        }
        // (-1)^t f(... a_t a_{t+1} ...)
        for t in 0..degree {
            let sign_negative = t % 2 == 0;
            for (u, c) in self.product(args[t], args[t + 1]) {
                let merged =
                    args[..t].iter().chain(std::iter::once(u)).chain(&args[t + 2..]).fold(0, |acc, &s| acc * nb + s);
                let c = if sign_negative { -c } else { c.clone() };
                row.push((idx(merged, m, out), c));
            }
        }
        // (-1)^{n+1} f(m (x) a_1 ... a_n) a_{n+1}
        let head: usize = args[..degree].iter().fold(0, |acc, &s| acc * nb + s);
        let last = &self.act[j][args[degree]];
        let negative = degree.is_multiple_of(2);
        for o2 in 0..dj {
            let c = &last[(o2, out)];
            if !c.is_zero() {
                row.push((idx(head, m, o2), if negative { -c } else { c.clone() }));
            }
        }
        row
    }

    fn digits(&self, mut tuple: usize, len: usize) -> Vec<usize> {
        let nb = self.nb();
        let mut out = vec![0; len];
        for k in (0..len).rev() {
            out[k] = tuple % nb.max(1);
            tuple /= nb.max(1);
        }
        out
    }

    /// `df`, of degree one higher.
    pub fn differential(&self, f: &Cochain) -> Cochain {
        let (i, j, n) = (f.source, f.target, f.degree);
        let mut out = self.zero_cochain(n + 1, i, j);
        if self.nb() == 0 {
            return out;
        }
        let (di, dj) = (self.dims[i], self.dims[j]);
        for t in 0..self.tuples(n + 1) {
            for m in 0..di {
                for o in 0..dj {
                    let mut acc = self.field.zero();
                    for (k, c) in self.differential_row(n, i, j, t, m, o) {
                        if !f.values[k].is_zero() {
                            acc.add_mul(&c, &f.values[k]);
                        }
                    }
                    out.values[(t * di + m) * dj + o] = acc;
                }
            }
        }
        out
    }

    /// `(f cup g)(m (x) alpha (x) beta) = g(f(m (x) alpha) (x) beta)`.
    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        if f.target != g.source {
            return Err(Error::IndexMismatch(format!(
                "cannot compose a cochain into member {} with one out of member {}",
                f.target, g.source
            )));
        }
        let (i, j, l) = (f.source, f.target, g.target);
        let (di, dj, dl) = (self.dims[i], self.dims[j], self.dims[l]);
        let (tp, tq) = (self.tuples(f.degree), self.tuples(g.degree));
        let mut out = self.zero_cochain(f.degree + g.degree, i, l);
        for a in 0..tp {
            for b in 0..tq {
                let t = a * tq + b;
                for m in 0..di {
                    for x in 0..dj {
                        let fx = &f.values[(a * di + m) * dj + x];
                        if fx.is_zero() {
                            continue;
                        }
                        for o in 0..dl {
                            let gx = &g.values[(b * dj + x) * dl + o];
                            if !gx.is_zero() {
                                out.values[(t * di + m) * dl + o].add_mul(fx, gx);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Value `f(m (x) a_s)` of a degree-one cochain as a `d_i x d_j` matrix in `m`.
    pub fn evaluate_degree_one(&self, f: &Cochain, s: usize) -> Matrix {
        let (di, dj) = (self.dims[f.source], self.dims[f.target]);
        Matrix::from_flat(self.field, di, dj, f.values[s * di * dj..(s + 1) * di * dj].to_vec())
    }

    /// The degree-one cochain whose value on `a_s` is `values[s]`.
    pub fn degree_one_from(&self, i: usize, j: usize, values: &[Matrix]) -> Cochain {
        let data = values.iter().flat_map(|m| m.entries().iter().cloned()).collect();
        Cochain { degree: 1, source: i, target: j, values: data }
    }

    pub fn original_dim(&self) -> usize {
        self.n
    }
}
