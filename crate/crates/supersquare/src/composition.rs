//! The split symmetric composition (super)algebras over GF(3).
//!
//! Builds S1, S2, S4, S8, S12 = B(1,2)-bar, S42 = B(4,2)-bar and the twisted
//! family B(1,2)-bar_lambda as explicit product tables with their bilinear
//! forms, together with the unital (Hurwitz) ancestors they twist.
//!
//! Basis conventions (fixed; exported tables depend on them):
//!   S1   [1]
//!   S2   [e+, e-]
//!   S4   [v@v, v@w, w@v, w@w]                      (x@y acts as <x|.>y)
//!   S12  [1, v, w]                                  (even first, then odd)
//!   S42  [v@v, v@w, w@v, w@w, v, w]
//!   S8   [v@v, v@w, w@v, w@w | second copy same]    (doubled quaternions)
//! The symplectic form has <v|w> = 1.

use crate::gf3::{F3, ONE, Parity, TWO, ZERO};
use crate::linalg::{vec_addmul, vec_is_zero, Mat};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompositionError {
    #[error("unknown algebra name `{0}`")]
    UnknownName(String),
    #[error("lambda parameter is only meaningful for B12bar_lambda")]
    UnexpectedLambda,
    #[error("B12bar_lambda requires a lambda parameter")]
    MissingLambda,
    #[error("coordinate vector has length {got}, algebra dimension is {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("algebra has no unit, conjugation undefined")]
    NoUnit,
}

/// A composition superalgebra given by tables on a fixed homogeneous basis.
#[derive(Clone)]
pub struct CompAlgebra {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<Parity>,
    pub labels: Vec<String>,
    /// product[i][j] = coordinates of (basis i) * (basis j)
    pub product: Vec<Vec<Vec<F3>>>,
    /// supersymmetric even bilinear form on basis pairs
    pub bform: Mat,
    /// values of the quadratic form on even basis vectors (zero slots on odd)
    pub q0: Vec<F3>,
    /// basis index of the unit, for Hurwitz algebras
    pub unit_index: Option<usize>,
}

impl CompAlgebra {
    pub fn dim_even(&self) -> usize {
        self.parity.iter().filter(|p| **p == Parity::Even).count()
    }

    pub fn dim_odd(&self) -> usize {
        self.dim - self.dim_even()
    }

    /// Bilinear extension of the product table.
    pub fn mul(&self, x: &[F3], y: &[F3]) -> Result<Vec<F3>, CompositionError> {
        if x.len() != self.dim {
            return Err(CompositionError::DimensionMismatch {
                got: x.len(),
                want: self.dim,
            });
        }
        if y.len() != self.dim {
            return Err(CompositionError::DimensionMismatch {
                got: y.len(),
                want: self.dim,
            });
        }
        let mut out = vec![ZERO; self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let c = x[i] * y[j];
                if !c.is_zero() {
                    vec_addmul(&mut out, c, &self.product[i][j]);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[F3] {
        &self.product[i][j]
    }

    pub fn b(&self, x: &[F3], y: &[F3]) -> F3 {
        let mut acc = ZERO;
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                acc += x[i] * y[j] * self.bform[(i, j)];
            }
        }
        acc
    }

    /// Quadratic form on the even part, extended from basis values by
    /// q(x+y) = q(x) + q(y) + b(x,y). Odd coordinates are ignored.
    pub fn q0_eval(&self, x: &[F3]) -> F3 {
        let mut acc = ZERO;
        for i in 0..self.dim {
            if self.parity[i] != Parity::Even {
                continue;
            }
            acc += x[i] * x[i] * self.q0[i];
            for j in (i + 1)..self.dim {
                if self.parity[j] == Parity::Even {
                    acc += x[i] * x[j] * self.bform[(i, j)];
                }
            }
        }
        acc
    }

    pub fn basis_vec(&self, i: usize) -> Vec<F3> {
        let mut v = vec![ZERO; self.dim];
        v[i] = ONE;
        v
    }

    /// x -> b(x,1) 1 - x, the superinvolution of a Hurwitz superalgebra.
    pub fn conjugation(&self, x: &[F3]) -> Result<Vec<F3>, CompositionError> {
        let unit = self.unit_index.ok_or(CompositionError::NoUnit)?;
        if x.len() != self.dim {
            return Err(CompositionError::DimensionMismatch {
                got: x.len(),
                want: self.dim,
            });
        }
        let one = self.basis_vec(unit);
        let c = self.b(x, &one);
        let mut out = vec![ZERO; self.dim];
        vec_addmul(&mut out, c, &one);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o -= xi;
        }
        Ok(out)
    }

    pub fn conjugation_matrix(&self) -> Result<Mat, CompositionError> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.conjugation(&self.basis_vec(j))?;
            for i in 0..self.dim {
                m[(i, j)] = col[i];
            }
        }
        Ok(m)
    }

    /// Left multiplication operator l_x : y -> x * y.
    pub fn lmul(&self, x: &[F3]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(x, &self.basis_vec(j)).unwrap();
            for i in 0..self.dim {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    /// Right multiplication with the super sign, r_x : y -> (-1)^{|x||y|} y * x
    /// for homogeneous x of the given parity.
    pub fn rmul(&self, x: &[F3], px: Parity) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let sign = Parity::koszul(px, self.parity[j]);
            let col = self.mul(&self.basis_vec(j), x).unwrap();
            for i in 0..self.dim {
                m[(i, j)] = sign * col[i];
            }
        }
        m
    }

    /// Parity of a homogeneous coordinate vector, if homogeneous.
    pub fn parity_of(&self, x: &[F3]) -> Option<Parity> {
        let mut p: Option<Parity> = None;
        for i in 0..self.dim {
            if !x[i].is_zero() {
                match p {
                    None => p = Some(self.parity[i]),
                    Some(q) if q != self.parity[i] => return None,
                    _ => {}
                }
            }
        }
        p.or(Some(Parity::Even))
    }
}

/// One failed identity, reported with the basis indices and both sides.
#[derive(Debug, Clone)]
pub struct Violation {
    pub identity: String,
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} at {:?}: lhs={} rhs={}",
            self.identity, self.indices, self.lhs, self.rhs
        )
    }
}

/// Check the composition-superalgebra axioms on the stored tables, including
/// associativity of b (the symmetric-composition condition).
///
/// The multilinear identity (the one relating b(xy,zt) and b(zy,xt)) is
/// checked on every homogeneous basis 4-tuple, which determines it on the
/// whole algebra; the quadratic and partially-linearized forms are checked on
/// basis combinations as well.
pub fn verify_composition_axioms(s: &CompAlgebra) -> Vec<Violation> {
    verify_axioms_inner(s, true)
}

/// Composition axioms only, without the symmetry condition. Unital
/// (Hurwitz) algebras pass this but not the symmetric check.
pub fn verify_hurwitz_axioms(s: &CompAlgebra) -> Vec<Violation> {
    verify_axioms_inner(s, false)
}

fn verify_axioms_inner(s: &CompAlgebra, symmetric: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = s.dim;

    // supersymmetric even pattern of b
    for i in 0..d {
        for j in 0..d {
            let bij = s.bform[(i, j)];
            let bji = s.bform[(j, i)];
            let (pi, pj) = (s.parity[i], s.parity[j]);
            let ok = match (pi, pj) {
                (Parity::Even, Parity::Even) => bij == bji,
                (Parity::Odd, Parity::Odd) => bij == -bji && (i != j || bij.is_zero()),
                _ => bij.is_zero(),
            };
            if !ok {
                out.push(Violation {
                    identity: "b supersymmetric even".into(),
                    indices: vec![i, j],
                    lhs: bij.to_string(),
                    rhs: bji.to_string(),
                });
            }
        }
    }

    // regularity
    if s.bform.rank() != d {
        out.push(Violation {
            identity: "b nondegenerate".into(),
            indices: vec![],
            lhs: s.bform.rank().to_string(),
            rhs: d.to_string(),
        });
    }

    // b restricted to the even part is the polar of q0
    for i in 0..d {
        for j in 0..d {
            if s.parity[i] == Parity::Even && s.parity[j] == Parity::Even {
                let mut x = s.basis_vec(i);
                vec_addmul(&mut x, ONE, &s.basis_vec(j));
                let polar = s.q0_eval(&x) - s.q0[i] - s.q0[j];
                let want = if i == j {
                    s.bform[(i, i)]
                } else {
                    s.bform[(i, j)]
                };
                if polar != want {
                    out.push(Violation {
                        identity: "b is polar of q0".into(),
                        indices: vec![i, j],
                        lhs: polar.to_string(),
                        rhs: want.to_string(),
                    });
                }
            }
        }
    }

    // parity additivity of the product
    for i in 0..d {
        for j in 0..d {
            let want = s.parity[i].add(s.parity[j]);
            for (k, c) in s.product[i][j].iter().enumerate() {
                if !c.is_zero() && s.parity[k] != want {
                    out.push(Violation {
                        identity: "product parity-additive".into(),
                        indices: vec![i, j, k],
                        lhs: format!("{}", s.parity[k]),
                        rhs: format!("{}", want),
                    });
                }
            }
        }
    }

    // norm multiplicativity on even basis pairs
    for i in 0..d {
        for j in 0..d {
            if s.parity[i] == Parity::Even && s.parity[j] == Parity::Even {
                let lhs = s.q0_eval(&s.product[i][j]);
                let rhs = s.q0[i] * s.q0[j];
                if lhs != rhs {
                    out.push(Violation {
                        identity: "q0(xy) = q0(x)q0(y)".into(),
                        indices: vec![i, j],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }

    // b(x0 y, x0 z) = q0(x0) b(y,z) = b(y x0, z x0) on basis triples
    for x in 0..d {
        if s.parity[x] != Parity::Even {
            continue;
        }
        let xv = s.basis_vec(x);
        for y in 0..d {
            for z in 0..d {
                let lhs = s.b(
                    &s.mul(&xv, &s.basis_vec(y)).unwrap(),
                    &s.mul(&xv, &s.basis_vec(z)).unwrap(),
                );
                let mid = s.q0[x] * s.bform[(y, z)];
                let rhs = s.b(
                    &s.mul(&s.basis_vec(y), &xv).unwrap(),
                    &s.mul(&s.basis_vec(z), &xv).unwrap(),
                );
                if lhs != mid || rhs != mid {
                    out.push(Violation {
                        identity: "b(xy,xz) = q0(x) b(y,z) = b(yx,zx)".into(),
                        indices: vec![x, y, z],
                        lhs: format!("{}/{}", lhs, rhs),
                        rhs: mid.to_string(),
                    });
                }
            }
        }
    }

    // the full linearization, on all homogeneous basis 4-tuples:
    // b(xy,zt) + (-1)^{|x||y|+|x||z|+|y||z|} b(zy,xt) = (-1)^{|y||z|} b(x,z) b(y,t)
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                for t in 0..d {
                    let (px, py, pz) = (s.parity[x], s.parity[y], s.parity[z]);
                    let s1 = F3::neg_one_pow(
                        px.bit() * py.bit() + px.bit() * pz.bit() + py.bit() * pz.bit(),
                    );
                    let s2 = F3::neg_one_pow(py.bit() * pz.bit());
                    let lhs = s.b(&s.product[x][y], &s.product[z][t])
                        + s1 * s.b(&s.product[z][y], &s.product[x][t]);
                    let rhs = s2 * s.bform[(x, z)] * s.bform[(y, t)];
                    if lhs != rhs {
                        out.push(Violation {
                            identity: "linearized norm identity".into(),
                            indices: vec![x, y, z, t],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
    }

    // symmetry: b(xy,z) = b(x,yz) on all basis triples
    if symmetric {
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let lhs = s.b(&s.product[x][y], &s.basis_vec(z));
                    let rhs = s.b(&s.basis_vec(x), &s.product[y][z]);
                    if lhs != rhs {
                        out.push(Violation {
                            identity: "b(xy,z) = b(x,yz)".into(),
                            indices: vec![x, y, z],
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
    }

    out
}

fn table(dim: usize) -> Vec<Vec<Vec<F3>>> {
    vec![vec![vec![ZERO; dim]; dim]; dim]
}

/// The one-dimensional para-Hurwitz algebra k1.
pub fn s1() -> CompAlgebra {
    let mut product = table(1);
    product[0][0][0] = ONE;
    let mut bform = Mat::zeros(1, 1);
    bform[(0, 0)] = TWO;
    CompAlgebra {
        name: "S1".into(),
        dim: 1,
        parity: vec![Parity::Even],
        labels: vec!["1".into()],
        product,
        bform,
        q0: vec![ONE],
        unit_index: Some(0),
    }
}

/// The two-dimensional symmetric composition algebra on {e+, e-} with
/// e+*e+ = e-, e-*e- = e+, mixed products zero, b(e+,e-) = 1.
pub fn s2() -> CompAlgebra {
    let mut product = table(2);
    product[0][0][1] = ONE;
    product[1][1][0] = ONE;
    let mut bform = Mat::zeros(2, 2);
    bform[(0, 1)] = ONE;
    bform[(1, 0)] = ONE;
    CompAlgebra {
        name: "S2".into(),
        dim: 2,
        parity: vec![Parity::Even; 2],
        labels: vec!["e+".into(), "e-".into()],
        product,
        bform,
        q0: vec![ZERO, ZERO],
        unit_index: None,
    }
}

/// Symplectic form value <x|y> on basis letters 0 = v, 1 = w.
fn symp(x: usize, y: usize) -> F3 {
    match (x, y) {
        (0, 1) => ONE,
        (1, 0) => TWO,
        _ => ZERO,
    }
}

const TENSOR_LABELS: [&str; 4] = ["v@v", "v@w", "w@v", "w@w"];

/// The Hurwitz superalgebra B(1,2) = k1 + V with uv = <u|v> 1.
pub fn hurwitz_b12() -> CompAlgebra {
    let mut product = table(3);
    // 1 is the unit
    for i in 0..3 {
        product[0][i][i] = ONE;
        product[i][0][i] = ONE;
    }
    // uv = <u|v> 1 on the odd part (indices 1 = v, 2 = w)
    for u in 0..2 {
        for v in 0..2 {
            product[1 + u][1 + v][0] = symp(u, v);
        }
    }
    let mut bform = Mat::zeros(3, 3);
    bform[(0, 0)] = TWO; // b(1,1) = 2 q0(1)
    bform[(1, 2)] = ONE;
    bform[(2, 1)] = TWO;
    CompAlgebra {
        name: "B12".into(),
        dim: 3,
        parity: vec![Parity::Even, Parity::Odd, Parity::Odd],
        labels: vec!["1".into(), "v".into(), "w".into()],
        product,
        bform,
        q0: vec![ONE, ZERO, ZERO],
        unit_index: Some(0),
    }
}

/// The Hurwitz superalgebra B(4,2) = (V @ V) + V, products
///   (x@y)(z@t) = <x|t> z@y,  u (x@y) = <x|u> y,  (x@y) u = <y|u> x,
///   u v = -u@v.
/// Basis: the four tensors (lex in (x,y)) then v, w.
pub fn hurwitz_b42() -> CompAlgebra {
    let mut product = table(6);
    let ti = |x: usize, y: usize| 2 * x + y; // index of x@y among 0..4
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                for t in 0..2 {
                    product[ti(x, y)][ti(z, t)][ti(z, y)] = symp(x, t);
                }
            }
        }
    }
    for u in 0..2 {
        for x in 0..2 {
            for y in 0..2 {
                // u . (x@y) = <x|u> y
                product[4 + u][ti(x, y)][4 + y] = symp(x, u);
                // (x@y) . u = conj(x@y)(u) = -<y|u> x
                product[ti(x, y)][4 + u][4 + x] = symp(u, y);
            }
        }
    }
    for u in 0..2 {
        for v in 0..2 {
            product[4 + u][4 + v][ti(u, v)] = TWO; // -u@v
        }
    }
    let mut bform = Mat::zeros(6, 6);
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                for t in 0..2 {
                    bform[(ti(x, y), ti(z, t))] = symp(x, z) * symp(y, t);
                }
            }
        }
    }
    for u in 0..2 {
        for v in 0..2 {
            bform[(4 + u, 4 + v)] = symp(u, v);
        }
    }
    let mut labels: Vec<String> = TENSOR_LABELS.iter().map(|s| s.to_string()).collect();
    labels.push("v".into());
    labels.push("w".into());
    CompAlgebra {
        name: "B42".into(),
        dim: 6,
        parity: vec![
            Parity::Even,
            Parity::Even,
            Parity::Even,
            Parity::Even,
            Parity::Odd,
            Parity::Odd,
        ],
        labels,
        product,
        bform,
        q0: vec![ZERO; 6], // det of a rank-one map vanishes
        unit_index: None,  // set below: the unit is v@w - w@v, not a basis vector
    }
}

/// Split quaternions as V @ V (the even part of B(4,2)); unital.
pub fn quaternions() -> CompAlgebra {
    let b42 = hurwitz_b42();
    let mut product = table(4);
    for i in 0..4 {
        for j in 0..4 {
            product[i][j] = b42.product[i][j][..4].to_vec();
        }
    }
    let mut bform = Mat::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            bform[(i, j)] = b42.bform[(i, j)];
        }
    }
    CompAlgebra {
        name: "Q".into(),
        dim: 4,
        parity: vec![Parity::Even; 4],
        labels: TENSOR_LABELS.iter().map(|s| s.to_string()).collect(),
        product,
        bform,
        q0: vec![ZERO; 4],
        unit_index: None, // unit is v@w - w@v in coordinates
    }
}

/// Coordinates of the unit of the quaternion algebra: v@w - w@v.
pub fn quaternion_unit() -> Vec<F3> {
    vec![ZERO, ONE, TWO, ZERO]
}

fn quaternion_conj(x: &[F3]) -> Vec<F3> {
    // x@y bar = -y@x
    let mut out = vec![ZERO; 4];
    out[0] = -x[0];
    out[1] = -x[2];
    out[2] = -x[1];
    out[3] = -x[3];
    out
}

/// The split Cayley algebra as a double Q + Q with
/// (a,b)(c,d) = (ac + conj(d) b, d a + b conj(c)), unit (1,0),
/// conjugation (a,b) -> (conj(a), -b), b((a,b),(c,d)) = b(a,c) - b(b,d).
pub fn cayley() -> CompAlgebra {
    let q = quaternions();
    let dim = 8;
    let mut product = table(dim);
    let part = |i: usize| (i / 4, i % 4); // (copy, quaternion index)
    for i in 0..dim {
        for j in 0..dim {
            let (ci, qi) = part(i);
            let (cj, qj) = part(j);
            let a = q.basis_vec(qi);
            let mut entry = vec![ZERO; dim];
            match (ci, cj) {
                (0, 0) => {
                    // (a,0)(c,0) = (ac, 0)
                    let ac = q.mul(&a, &q.basis_vec(qj)).unwrap();
                    entry[..4].copy_from_slice(&ac);
                }
                (0, 1) => {
                    // (a,0)(0,d) = (0, d a)
                    let da = q.mul(&q.basis_vec(qj), &a).unwrap();
                    entry[4..].copy_from_slice(&da);
                }
                (1, 0) => {
                    // (0,b)(c,0) = (0, b conj(c))
                    let bc = q
                        .mul(&a, &quaternion_conj(&q.basis_vec(qj)))
                        .unwrap();
                    entry[4..].copy_from_slice(&bc);
                }
                (1, 1) => {
                    // (0,b)(0,d) = (conj(d) b, 0)
                    let db = q
                        .mul(&quaternion_conj(&q.basis_vec(qj)), &a)
                        .unwrap();
                    entry[..4].copy_from_slice(&db);
                }
                _ => unreachable!(),
            }
            product[i][j] = entry;
        }
    }
    let mut bform = Mat::zeros(dim, dim);
    for i in 0..4 {
        for j in 0..4 {
            bform[(i, j)] = q.bform[(i, j)];
            bform[(4 + i, 4 + j)] = -q.bform[(i, j)];
        }
    }
    let mut labels = Vec::new();
    for c in 0..2 {
        for t in TENSOR_LABELS {
            labels.push(format!("{}[{}]", t, c));
        }
    }
    CompAlgebra {
        name: "C8".into(),
        dim,
        parity: vec![Parity::Even; dim],
        labels,
        product,
        bform,
        q0: vec![ZERO; dim],
        unit_index: None, // unit is (v@w - w@v, 0)
    }
}

/// Unit coordinates of the Cayley algebra built by `cayley`.
pub fn cayley_unit() -> Vec<F3> {
    let mut u = vec![ZERO; 8];
    u[1] = ONE;
    u[2] = TWO;
    u
}

fn conj_via_unit(s: &CompAlgebra, unit: &[F3], x: &[F3]) -> Vec<F3> {
    let c = s.b(x, unit);
    let mut out = vec![ZERO; s.dim];
    vec_addmul(&mut out, c, unit);
    for (o, &xi) in out.iter_mut().zip(x) {
        *o -= xi;
    }
    out
}

/// Para-twist x * y = conj(x) conj(y) of a unital composition superalgebra
/// whose unit has the given coordinates. The norm is unchanged.
pub fn para_twist(s: &CompAlgebra, unit: &[F3], name: &str) -> CompAlgebra {
    let mut product = table(s.dim);
    for i in 0..s.dim {
        let xb = conj_via_unit(s, unit, &s.basis_vec(i));
        for j in 0..s.dim {
            let yb = conj_via_unit(s, unit, &s.basis_vec(j));
            product[i][j] = s.mul(&xb, &yb).unwrap();
        }
    }
    CompAlgebra {
        name: name.into(),
        dim: s.dim,
        parity: s.parity.clone(),
        labels: s.labels.clone(),
        product,
        bform: s.bform.clone(),
        q0: s.q0.clone(),
        unit_index: None,
    }
}

/// S12 = para-twist of B(1,2).
pub fn s12() -> CompAlgebra {
    let b = hurwitz_b12();
    para_twist(&b, &b.basis_vec(0), "S12")
}

/// S42 = para-twist of B(4,2).
pub fn s42() -> CompAlgebra {
    let b = hurwitz_b42();
    // unit of B(4,2) is v@w - w@v in the tensor part
    let mut unit = vec![ZERO; 6];
    unit[1] = ONE;
    unit[2] = TWO;
    para_twist(&b, &unit, "S42")
}

/// S4 = the even part of S42 (the para-quaternions).
pub fn s4() -> CompAlgebra {
    let s = s42();
    let mut product = table(4);
    for i in 0..4 {
        for j in 0..4 {
            product[i][j] = s.product[i][j][..4].to_vec();
        }
    }
    let mut bform = Mat::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            bform[(i, j)] = s.bform[(i, j)];
        }
    }
    CompAlgebra {
        name: "S4".into(),
        dim: 4,
        parity: vec![Parity::Even; 4],
        labels: TENSOR_LABELS.iter().map(|s| s.to_string()).collect(),
        product,
        bform,
        q0: vec![ZERO; 4],
        unit_index: None,
    }
}

/// S8 = para-twist of the split Cayley algebra.
pub fn s8() -> CompAlgebra {
    let c = cayley();
    para_twist(&c, &cayley_unit(), "S8")
}

/// The twisted family on B(1,2): x * y = phi(conj x) phi^2(conj y), where phi
/// fixes v and maps w to w + (lambda - 1) v. With this normalization lambda=1
/// gives the identity twist, i.e. exactly the para-Hurwitz table S12.
pub fn b12bar_lambda(lambda: F3) -> CompAlgebra {
    let b = hurwitz_b12();
    let mu = lambda - ONE;
    // phi as a matrix on [1, v, w]
    let mut phi = Mat::identity(3);
    phi[(1, 2)] = mu;
    let phi2 = phi.matmul(&phi);
    let mut product = table(3);
    for i in 0..3 {
        let xb = b.conjugation(&b.basis_vec(i)).unwrap();
        let px = phi.apply(&xb);
        for j in 0..3 {
            let yb = b.conjugation(&b.basis_vec(j)).unwrap();
            let py = phi2.apply(&yb);
            product[i][j] = b.mul(&px, &py).unwrap();
        }
    }
    CompAlgebra {
        name: format!("B12bar_{}", lambda),
        dim: 3,
        parity: b.parity.clone(),
        labels: b.labels.clone(),
        product,
        bform: b.bform.clone(),
        q0: b.q0.clone(),
        unit_index: None,
    }
}

/// Build one of the named split algebras.
pub fn build_composition(name: &str, lambda: Option<F3>) -> Result<CompAlgebra, CompositionError> {
    if name != "B12bar_lambda" && lambda.is_some() {
        return Err(CompositionError::UnexpectedLambda);
    }
    match name {
        "S1" => Ok(s1()),
        "S2" => Ok(s2()),
        "S4" => Ok(s4()),
        "S8" => Ok(s8()),
        "S12" => Ok(s12()),
        "S42" => Ok(s42()),
        "B12bar_lambda" => lambda
            .map(b12bar_lambda)
            .ok_or(CompositionError::MissingLambda),
        other => Err(CompositionError::UnknownName(other.into())),
    }
}

/// Tables agree entry for entry.
pub fn same_tables(a: &CompAlgebra, b: &CompAlgebra) -> bool {
    if a.dim != b.dim || a.parity != b.parity {
        return false;
    }
    if a.bform != b.bform {
        return false;
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            if !vec_is_zero(
                &a.product[i][j]
                    .iter()
                    .zip(&b.product[i][j])
                    .map(|(&x, &y)| x - y)
                    .collect::<Vec<_>>(),
            ) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3(v: i64) -> F3 {
        F3::from_i64(v)
    }

    #[test]
    fn all_split_algebras_satisfy_axioms() {
        for s in [s1(), s2(), s4(), s8(), s12(), s42()] {
            let v = verify_composition_axioms(&s);
            assert!(v.is_empty(), "{}: {:?}", s.name, &v[..v.len().min(5)]);
        }
        for l in 0..3 {
            let s = b12bar_lambda(f3(l));
            let v = verify_composition_axioms(&s);
            assert!(v.is_empty(), "{}: {:?}", s.name, &v[..v.len().min(5)]);
        }
    }

    #[test]
    fn hurwitz_ancestors_satisfy_axioms() {
        for s in [hurwitz_b12(), hurwitz_b42(), quaternions(), cayley()] {
            let v = verify_hurwitz_axioms(&s);
            assert!(v.is_empty(), "{}: {:?}", s.name, &v[..v.len().min(5)]);
        }
    }

    #[test]
    fn units_of_ancestors() {
        // B(1,2) has basis unit; quaternions and Cayley have coordinate units
        let b = hurwitz_b12();
        let one = b.basis_vec(0);
        for i in 0..3 {
            assert_eq!(b.mul(&one, &b.basis_vec(i)).unwrap(), b.basis_vec(i));
            assert_eq!(b.mul(&b.basis_vec(i), &one).unwrap(), b.basis_vec(i));
        }
        let q = quaternions();
        let u = quaternion_unit();
        for i in 0..4 {
            assert_eq!(q.mul(&u, &q.basis_vec(i)).unwrap(), q.basis_vec(i));
            assert_eq!(q.mul(&q.basis_vec(i), &u).unwrap(), q.basis_vec(i));
        }
        let c = cayley();
        let u = cayley_unit();
        for i in 0..8 {
            assert_eq!(c.mul(&u, &c.basis_vec(i)).unwrap(), c.basis_vec(i));
            assert_eq!(c.mul(&c.basis_vec(i), &u).unwrap(), c.basis_vec(i));
        }
    }

    #[test]
    fn dims_and_parities() {
        assert_eq!((s1().dim_even(), s1().dim_odd()), (1, 0));
        assert_eq!((s2().dim_even(), s2().dim_odd()), (2, 0));
        assert_eq!((s4().dim_even(), s4().dim_odd()), (4, 0));
        assert_eq!((s8().dim_even(), s8().dim_odd()), (8, 0));
        assert_eq!((s12().dim_even(), s12().dim_odd()), (1, 2));
        assert_eq!((s42().dim_even(), s42().dim_odd()), (4, 2));
    }

    #[test]
    fn s12_products() {
        let s = s12();
        // v * w = <v|w> 1 = 1
        assert_eq!(s.mul(&s.basis_vec(1), &s.basis_vec(2)).unwrap(), s.basis_vec(0));
        // 1 * u = -u for odd u
        let got = s.mul(&s.basis_vec(0), &s.basis_vec(1)).unwrap();
        assert_eq!(got, vec![ZERO, TWO, ZERO]);
        let got = s.mul(&s.basis_vec(1), &s.basis_vec(0)).unwrap();
        assert_eq!(got, vec![ZERO, TWO, ZERO]);
        // 1 * 1 = 1
        assert_eq!(s.mul(&s.basis_vec(0), &s.basis_vec(0)).unwrap(), s.basis_vec(0));
    }

    #[test]
    fn s42_products() {
        let s = s42();
        // odd u, v: u * v = -u@v; check v * w = -(v@w), index 1
        let got = s.mul(&s.basis_vec(4), &s.basis_vec(5)).unwrap();
        let mut want = vec![ZERO; 6];
        want[1] = TWO;
        assert_eq!(got, want);
        // (x@y) * (z@t) = <y|z> t@x: (v@w)*(w@v) should be <w|w> .. = 0... use
        // (v@w)*(w@v): <w|w> = 0 so zero; (v@v)*(w@w)... <v|w> w@v wait:
        // (x@y)=(v@v), (z@t)=(w@w): <y|z>=<v|w>=1, t@x = w@v -> index 2.
        let got = s.mul(&s.basis_vec(0), &s.basis_vec(3)).unwrap();
        let mut want = vec![ZERO; 6];
        want[2] = ONE;
        assert_eq!(got, want);
    }

    #[test]
    fn s2_products() {
        let s = s2();
        assert_eq!(s.mul(&s.basis_vec(0), &s.basis_vec(0)).unwrap(), s.basis_vec(1));
        assert_eq!(s.b(&s.basis_vec(0), &s.basis_vec(1)), ONE);
        assert!(vec_is_zero(&s.mul(&s.basis_vec(0), &s.basis_vec(1)).unwrap()));
    }

    #[test]
    fn s1_product_and_zero() {
        let s = s1();
        assert_eq!(s.mul(&s.basis_vec(0), &s.basis_vec(0)).unwrap(), s.basis_vec(0));
        let zero = vec![ZERO];
        assert!(vec_is_zero(&s.mul(&zero, &s.basis_vec(0)).unwrap()));
    }

    #[test]
    fn conjugation_examples() {
        let b = hurwitz_b12();
        // units are fixed
        assert_eq!(b.conjugation(&b.basis_vec(0)).unwrap(), b.basis_vec(0));
        // odd u maps to -u since b(u,1) = 0
        assert_eq!(b.conjugation(&b.basis_vec(1)).unwrap(), vec![ZERO, TWO, ZERO]);
        // B(4,2): x@y bar = -y@x
        let c = hurwitz_b42();
        let unit: Vec<F3> = vec![ZERO, ONE, TWO, ZERO, ZERO, ZERO];
        let conj = conj_via_unit(&c, &unit, &c.basis_vec(1)); // v@w
        let mut want = vec![ZERO; 6];
        want[2] = TWO; // -w@v
        assert_eq!(conj, want);
        // no unit on the para side
        assert_eq!(
            s12().conjugation(&s12().basis_vec(0)).unwrap_err(),
            CompositionError::NoUnit
        );
    }

    #[test]
    fn b12bar_lambda_one_is_para_hurwitz() {
        assert!(same_tables(&b12bar_lambda(ONE), &s12()));
        // and a genuine twist differs
        assert!(!same_tables(&b12bar_lambda(TWO), &s12()));
    }

    #[test]
    fn corrupted_s2_fails_axioms() {
        let mut s = s2();
        s.product[0][1][0] = ONE; // flip one table entry
        assert!(!verify_composition_axioms(&s).is_empty());
    }

    #[test]
    fn bform_nondegenerate_all() {
        for s in [s1(), s2(), s4(), s8(), s12(), s42()] {
            assert_eq!(s.bform.rank(), s.dim, "{}", s.name);
        }
    }

    #[test]
    fn builder_errors() {
        assert!(matches!(
            build_composition("S9", None),
            Err(CompositionError::UnknownName(_))
        ));
        assert!(matches!(
            build_composition("S4", Some(ONE)),
            Err(CompositionError::UnexpectedLambda)
        ));
        assert!(matches!(
            build_composition("B12bar_lambda", None),
            Err(CompositionError::MissingLambda)
        ));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let s = s2();
        assert!(matches!(
            s.mul(&[ONE], &s.basis_vec(0)),
            Err(CompositionError::DimensionMismatch { .. })
        ));
    }
}
