//! The odd part as a module over the even part: action matrices, highest
//! weight vectors, a Norton-style irreducibility test over GF(3), explicit
//! two-copy decompositions, and independent exterior-power models of three
//! of the odd parts.

use crate::gf3::{F3, ONE, Parity, ZERO};
use crate::linalg::{span_closure, vec_is_zero, Mat, Subspace};
use crate::magic::LieSuperalgebra;
use crate::roots::{lex_sign, GradedEntry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// The odd part of a graded entry as a module over the even part.
pub struct ModuleRep {
    pub dim: usize,
    /// Action matrix per even basis vector, on odd coordinates.
    pub action: Vec<Mat>,
    /// Basis index in g per odd coordinate.
    pub odd_index: Vec<usize>,
    /// Lattice weight per odd coordinate.
    pub weights: Vec<Vec<i64>>,
}

/// Restriction of the adjoint action to even -> End(odd).
pub fn odd_module(ge: &GradedEntry) -> ModuleRep {
    let g = &ge.g;
    let n = g.dim();
    let odd_index: Vec<usize> = (0..n).filter(|&i| g.parity(i) == Parity::Odd).collect();
    let pos: BTreeMap<usize, usize> = odd_index.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let m = odd_index.len();
    let mut action = Vec::new();
    for e in 0..n {
        if g.parity(e) == Parity::Odd {
            continue;
        }
        let mut mat = Mat::zeros(m, m);
        for (c, &oc) in odd_index.iter().enumerate() {
            for &(k, v) in &g.bracket_basis(e, oc) {
                mat[(pos[&(k as usize)], c)] = v;
            }
        }
        action.push(mat);
    }
    let weights = odd_index.iter().map(|&i| ge.degree(i).to_vec()).collect();
    ModuleRep {
        dim: m,
        action,
        odd_index,
        weights,
    }
}

/// Action matrices of arbitrary even vectors on the odd part of g.
pub fn odd_action_for(g: &LieSuperalgebra, even_vectors: &[Vec<F3>]) -> (Vec<Mat>, Vec<usize>) {
    let n = g.dim();
    let odd_index: Vec<usize> = (0..n).filter(|&i| g.parity(i) == Parity::Odd).collect();
    let pos: BTreeMap<usize, usize> = odd_index.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let m = odd_index.len();
    let mut out = Vec::new();
    for x in even_vectors {
        let mut mat = Mat::zeros(m, m);
        for (c, &oc) in odd_index.iter().enumerate() {
            let br = g.bracket_eval(x, &g.basis_vec(oc)).unwrap();
            for (k, &v) in br.iter().enumerate() {
                if !v.is_zero() {
                    mat[(pos[&k], c)] = v;
                }
            }
        }
        out.push(mat);
    }
    (out, odd_index)
}

/// Exhaustive representation-property check on even basis pairs:
/// action([x,y]) = action(x)action(y) - action(y)action(x).
pub fn verify_representation(ge: &GradedEntry, rep: &ModuleRep) -> usize {
    let g = &ge.g;
    let even_index: Vec<usize> = (0..g.dim())
        .filter(|&i| g.parity(i) == Parity::Even)
        .collect();
    let pos: BTreeMap<usize, usize> = even_index.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let mut bad = 0;
    for (a, &ia) in even_index.iter().enumerate() {
        for (b, &ib) in even_index.iter().enumerate().skip(a + 1) {
            let mut want = Mat::zeros(rep.dim, rep.dim);
            for &(k, c) in &g.bracket_basis(ia, ib) {
                if let Some(&pk) = pos.get(&(k as usize)) {
                    for i in 0..rep.dim {
                        for j in 0..rep.dim {
                            want[(i, j)] += c * rep.action[pk][(i, j)];
                        }
                    }
                }
            }
            let got = rep.action[a].comm(&rep.action[b], ONE);
            if got != want {
                bad += 1;
            }
        }
    }
    bad
}

/// Weight multiset of the module equals the odd root multiset.
pub fn weight_multiset(rep: &ModuleRep) -> Vec<Vec<i64>> {
    let mut w = rep.weights.clone();
    w.sort();
    w
}

/// Basis of the joint kernel of all positive even root vectors, split by
/// weight. Returns (weight, vectors) pairs, weights sorted.
pub fn highest_weight_vectors(
    ge: &GradedEntry,
    rep: &ModuleRep,
    order: &[usize],
) -> Vec<(Vec<i64>, Vec<Vec<F3>>)> {
    let g = &ge.g;
    let even_index: Vec<usize> = (0..g.dim())
        .filter(|&i| g.parity(i) == Parity::Even)
        .collect();
    let mut rows = Vec::new();
    for (a, &ia) in even_index.iter().enumerate() {
        let d = ge.degree(ia);
        if lex_sign(order, d) > 0 {
            for i in 0..rep.dim {
                rows.push(rep.action[a].row_vec(i));
            }
        }
    }
    let kernel = if rows.is_empty() {
        Mat::identity(rep.dim)
            .nullspace()
            .into_iter()
            .collect::<Vec<_>>()
    } else {
        Mat::from_rows(rows).nullspace()
    };
    // split by weight: intersect with each weight-coordinate block
    let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, w) in rep.weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(i);
    }
    let mut ker_space = Subspace::new(rep.dim);
    for v in &kernel {
        ker_space.adjoin(v);
    }
    let mut out = Vec::new();
    let mut accounted = 0;
    for (w, coords) in &by_weight {
        // kernel vectors supported on this weight block
        let mut vecs = Vec::new();
        for v in ker_space.basis() {
            if v
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || coords.contains(&i))
            {
                vecs.push(v.clone());
            }
        }
        if !vecs.is_empty() {
            accounted += vecs.len();
            out.push((w.clone(), vecs));
        }
    }
    assert_eq!(
        accounted,
        ker_space.dim(),
        "highest-weight space must split by weight"
    );
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NortonVerdict {
    Irreducible,
    Reducible { witness_dim: usize },
    Inconclusive,
}

impl std::fmt::Display for NortonVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NortonVerdict::Irreducible => write!(f, "irreducible"),
            NortonVerdict::Reducible { witness_dim } => {
                write!(f, "reducible (submodule of dimension {})", witness_dim)
            }
            NortonVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// All nonzero vectors of the span, one per projective point.
fn projective_points(basis: &[Vec<F3>], dim: usize) -> Vec<Vec<F3>> {
    let d = basis.len();
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let total = 3usize.pow(d as u32);
    for mask in 1..total {
        let mut digits = Vec::with_capacity(d);
        let mut m = mask;
        for _ in 0..d {
            digits.push(m % 3);
            m /= 3;
        }
        // canonical representative: first nonzero digit is 1
        if digits.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![ZERO; dim];
        for (c, row) in digits.iter().zip(basis) {
            if *c != 0 {
                crate::linalg::vec_addmul(&mut v, F3::new(*c as u8), row);
            }
        }
        out.push(v);
    }
    out
}

/// Norton's criterion: pick elements of the enveloping algebra with small
/// nontrivial kernel; if some kernel vector generates a proper submodule the
/// module is reducible (likewise on the transpose side, which witnesses a
/// proper submodule as an annihilator); if every kernel vector on both
/// sides generates everything, the module is irreducible.
pub fn norton_irreducible(action: &[Mat], dim: usize, seed: u64) -> NortonVerdict {
    if dim == 0 || action.is_empty() {
        return NortonVerdict::Inconclusive;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let transposed: Vec<Mat> = action.iter().map(|m| m.transpose()).collect();
    const MAX_ATTEMPTS: usize = 64;
    const MAX_NULLITY: usize = 6;
    for attempt in 0..MAX_ATTEMPTS {
        // random combination, enriched with a product every other attempt
        let combo = |rng: &mut ChaCha8Rng| -> Mat {
            let mut t = Mat::zeros(dim, dim);
            for m in action {
                let c = F3::new(rng.gen_range(0..3));
                if !c.is_zero() {
                    t = t.add(&m.scale(c));
                }
            }
            t
        };
        let t = if attempt % 2 == 0 {
            combo(&mut rng)
        } else {
            combo(&mut rng).matmul(&combo(&mut rng))
        };
        let ker = t.nullspace();
        if ker.is_empty() || ker.len() > MAX_NULLITY {
            continue;
        }
        for v in projective_points(&ker, dim) {
            let spin = span_closure(&[v], action, dim);
            if !spin.is_full() {
                return NortonVerdict::Reducible {
                    witness_dim: spin.dim(),
                };
            }
        }
        let kert = t.transpose().nullspace();
        for w in projective_points(&kert, dim) {
            let spin = span_closure(&[w], &transposed, dim);
            if !spin.is_full() {
                // the annihilator of the dual submodule is a proper submodule
                return NortonVerdict::Reducible {
                    witness_dim: dim - spin.dim(),
                };
            }
        }
        return NortonVerdict::Irreducible;
    }
    NortonVerdict::Inconclusive
}

/// Spin up each highest-weight vector and check the module splits as the
/// direct sum of the two resulting submodules.
pub fn two_copies_decomposition(
    rep: &ModuleRep,
    hw: &[(Vec<i64>, Vec<Vec<F3>>)],
    expect_dim: usize,
) -> Result<(usize, usize), String> {
    let vecs: Vec<Vec<F3>> = hw.iter().flat_map(|(_, vs)| vs.iter().cloned()).collect();
    if vecs.len() != 2 {
        return Err(format!("expected 2 highest-weight vectors, got {}", vecs.len()));
    }
    let s1 = span_closure(&[vecs[0].clone()], &rep.action, rep.dim);
    let s2 = span_closure(&[vecs[1].clone()], &rep.action, rep.dim);
    if s1.dim() != expect_dim || s2.dim() != expect_dim {
        return Err(format!(
            "copies have dimensions {} and {}, expected {}",
            s1.dim(),
            s2.dim(),
            expect_dim
        ));
    }
    if s1.intersection_dim(&s2) != 0 {
        return Err("copies intersect nontrivially".into());
    }
    if s1.dim() + s2.dim() != rep.dim {
        return Err("copies do not fill the module".into());
    }
    Ok((s1.dim(), s2.dim()))
}

// ---- exterior-power models ---------------------------------------------------

/// An sp(W)-module carried by explicit matrices on a weight-homogeneous
/// basis.
pub struct ExteriorModel {
    pub dim: usize,
    /// action matrix per sp(W) basis element
    pub action: Vec<Mat>,
    /// weight per coordinate, in the delta-lattice of sp(W)
    pub weights: Vec<Vec<i64>>,
    /// indices of the sp basis elements that are positive root vectors
    pub positive: Vec<usize>,
    /// coordinates of the highest-weight vector named by the construction
    pub hw_vector: Vec<F3>,
    pub hw_weight: Vec<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExteriorKind {
    /// ker of the contraction Lambda^3 k^6 -> k^6 (dimension 14)
    Sp6Lambda3,
    /// ker/~ of the contraction Lambda^3 k^8 -> k^8 modulo the embedded
    /// natural module (dimension 40)
    Sp8Lambda3,
    /// ker of Lambda^2 k^6 -> k modulo the invariant bivector (dimension 13)
    Sp6Lambda2,
}

/// Basis of sp(W) for W = k^{2n} with symplectic basis a_1..a_n, b_1..b_n:
/// the operators gamma_{x,y} over unordered basis pairs. Returns the
/// matrices, their weights, and the letter weight table.
fn sp_basis(n: usize) -> (Vec<Mat>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let dim = 2 * n;
    // letter weights: a_i -> -delta_i, b_i -> +delta_i
    let mut letter_w = vec![vec![0i64; n]; dim];
    for i in 0..n {
        letter_w[i][i] = -1;
        letter_w[n + i][i] = 1;
    }
    let form = |x: usize, y: usize| -> F3 {
        if x < n && y >= n && y - n == x {
            ONE
        } else if y < n && x >= n && x - n == y {
            -ONE
        } else {
            ZERO
        }
    };
    let mut mats = Vec::new();
    let mut weights = Vec::new();
    for x in 0..dim {
        for y in x..dim {
            let mut m = Mat::zeros(dim, dim);
            for z in 0..dim {
                // gamma_{x,y}(e_z) = {x|z} e_y + {y|z} e_x
                let c1 = form(x, z);
                let c2 = form(y, z);
                if !c1.is_zero() {
                    m[(y, z)] += c1;
                }
                if !c2.is_zero() {
                    m[(x, z)] += c2;
                }
            }
            if m.is_zero() {
                continue;
            }
            mats.push(m);
            weights.push(
                letter_w[x]
                    .iter()
                    .zip(&letter_w[y])
                    .map(|(a, b)| a + b)
                    .collect(),
            );
        }
    }
    (mats, weights, letter_w)
}

fn wedge3_indices(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Action of an operator on Lambda^3 by derivation.
fn wedge3_action(op: &Mat, idx: &[(usize, usize, usize)]) -> Mat {
    let pos: BTreeMap<(usize, usize, usize), usize> =
        idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let mut out = Mat::zeros(idx.len(), idx.len());
    let mut add = |target: [usize; 3], col: usize, c: F3| {
        if c.is_zero() {
            return;
        }
        let mut t = target;
        // sort with sign
        let mut sign = ONE;
        for a in 0..3 {
            for b in 0..2 {
                if t[b] > t[b + 1] {
                    t.swap(b, b + 1);
                    sign = -sign;
                }
            }
            let _ = a;
        }
        if t[0] == t[1] || t[1] == t[2] {
            return;
        }
        out[(pos[&(t[0], t[1], t[2])], col)] += sign * c;
    };
    for (col, &(i, j, k)) in idx.iter().enumerate() {
        let dim = op.rows();
        for r in 0..dim {
            add([r, j, k], col, op[(r, i)]);
            add([i, r, k], col, op[(r, j)]);
            add([i, j, r], col, op[(r, k)]);
        }
    }
    out
}

/// Build the requested exterior-power model, with the stated kernel or
/// quotient construction, carried out weight block by weight block so the
/// result stays graded.
pub fn exterior_model(kind: ExteriorKind) -> ExteriorModel {
    match kind {
        ExteriorKind::Sp6Lambda3 => lambda3_kernel_model(3),
        ExteriorKind::Sp8Lambda3 => lambda3_quotient_model(),
        ExteriorKind::Sp6Lambda2 => lambda2_quotient_model(),
    }
}

fn contraction_phi3(n: usize, idx: &[(usize, usize, usize)]) -> Mat {
    // phi(z1^z2^z3) = {z1|z2} z3 + {z2|z3} z1 + {z3|z1} z2
    let dim = 2 * n;
    let form = |x: usize, y: usize| -> F3 {
        if x < n && y >= n && y - n == x {
            ONE
        } else if y < n && x >= n && x - n == y {
            -ONE
        } else {
            ZERO
        }
    };
    let mut m = Mat::zeros(dim, idx.len());
    for (col, &(i, j, k)) in idx.iter().enumerate() {
        m[(k, col)] += form(i, j);
        m[(i, col)] += form(j, k);
        m[(j, col)] += form(k, i);
    }
    m
}

fn wedge_weight(letter_w: &[Vec<i64>], parts: &[usize]) -> Vec<i64> {
    let n = letter_w[0].len();
    let mut w = vec![0i64; n];
    for &p in parts {
        for t in 0..n {
            w[t] += letter_w[p][t];
        }
    }
    w
}

/// Positive sp root vectors under descending delta priority.
fn positive_indices(weights: &[Vec<i64>], order: &[usize]) -> Vec<usize> {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| lex_sign(order, w) > 0)
        .map(|(i, _)| i)
        .collect()
}

fn lambda3_kernel_model(n: usize) -> ExteriorModel {
    let dim_w = 2 * n;
    let (sp, sp_w, letter_w) = sp_basis(n);
    let idx = wedge3_indices(dim_w);
    let phi = contraction_phi3(n, &idx);
    assert_eq!(phi.rank(), dim_w, "contraction must be onto W");
    // weight blocks of Lambda^3
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (c, &(i, j, k)) in idx.iter().enumerate() {
        blocks
            .entry(wedge_weight(&letter_w, &[i, j, k]))
            .or_default()
            .push(c);
    }
    // kernel basis per weight block
    let mut kernel_rows: Vec<Vec<F3>> = Vec::new();
    let mut kernel_weights: Vec<Vec<i64>> = Vec::new();
    for (w, cols) in &blocks {
        let mut sub = Mat::zeros(dim_w, cols.len());
        for (cc, &c) in cols.iter().enumerate() {
            for r in 0..dim_w {
                sub[(r, cc)] = phi[(r, c)];
            }
        }
        for v in sub.nullspace() {
            let mut full = vec![ZERO; idx.len()];
            for (cc, &c) in cols.iter().enumerate() {
                full[c] = v[cc];
            }
            kernel_rows.push(full);
            kernel_weights.push(w.clone());
        }
    }
    assert_eq!(kernel_rows.len(), 14);
    let coords = crate::linalg::CoordBasis::new(&kernel_rows);
    let action: Vec<Mat> = sp
        .iter()
        .map(|op| {
            let big = wedge3_action(op, &idx);
            restrict(&big, &kernel_rows, &coords)
        })
        .collect();
    // b1 ^ b2 ^ b3 has wedge index (n, n+1, n+2)
    let hw_col = idx.iter().position(|&t| t == (n, n + 1, n + 2)).unwrap();
    let mut hw_full = vec![ZERO; idx.len()];
    hw_full[hw_col] = ONE;
    let hw_vector = coords.coords(&hw_full).expect("b-wedge lies in the kernel");
    let order: Vec<usize> = (0..n).collect();
    ExteriorModel {
        dim: kernel_rows.len(),
        positive: positive_indices(&sp_w, &order),
        action,
        weights: kernel_weights,
        hw_vector,
        hw_weight: vec![1; n],
    }
}

fn restrict(big: &Mat, basis: &[Vec<F3>], coords: &crate::linalg::CoordBasis) -> Mat {
    let m = basis.len();
    let mut out = Mat::zeros(m, m);
    for (c, bv) in basis.iter().enumerate() {
        let img = big.apply(bv);
        let co = coords
            .coords(&img)
            .expect("subspace must be invariant under the action");
        for r in 0..m {
            out[(r, c)] = co[r];
        }
    }
    out
}

fn lambda3_quotient_model() -> ExteriorModel {
    let n = 4;
    let dim_w = 2 * n;
    let (sp, sp_w, letter_w) = sp_basis(n);
    let idx = wedge3_indices(dim_w);
    let phi = contraction_phi3(n, &idx);
    assert_eq!(phi.rank(), dim_w);
    // the embedded natural module: omega ^ z for omega = sum_i a_i ^ b_i
    let omega_wedge = |z: usize| -> Vec<F3> {
        let mut v = vec![ZERO; idx.len()];
        for i in 0..n {
            // a_i ^ b_i ^ z, sorted with sign
            let mut t = [i, n + i, z];
            let mut sign = ONE;
            for _ in 0..3 {
                for b in 0..2 {
                    if t[b] > t[b + 1] {
                        t.swap(b, b + 1);
                        sign = -sign;
                    }
                }
            }
            if t[0] == t[1] || t[1] == t[2] {
                continue;
            }
            let col = idx.iter().position(|&x| x == (t[0], t[1], t[2])).unwrap();
            v[col] += sign;
        }
        v
    };
    let wtilde: Vec<Vec<F3>> = (0..dim_w).map(omega_wedge).collect();
    // both live inside the kernel, weight block by weight block
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (c, &(i, j, k)) in idx.iter().enumerate() {
        blocks
            .entry(wedge_weight(&letter_w, &[i, j, k]))
            .or_default()
            .push(c);
    }
    let mut rep_rows: Vec<Vec<F3>> = Vec::new(); // quotient representatives
    let mut rep_weights: Vec<Vec<i64>> = Vec::new();
    let mut wtilde_checked = 0usize;
    for (w, cols) in &blocks {
        let mut sub = Mat::zeros(dim_w, cols.len());
        for (cc, &c) in cols.iter().enumerate() {
            for r in 0..dim_w {
                sub[(r, cc)] = phi[(r, c)];
            }
        }
        let mut kernel_block: Vec<Vec<F3>> = Vec::new();
        for v in sub.nullspace() {
            let mut full = vec![ZERO; idx.len()];
            for (cc, &c) in cols.iter().enumerate() {
                full[c] = v[cc];
            }
            kernel_block.push(full);
        }
        // subtract the wtilde part supported on this weight: the weight of
        // omega ^ z equals the letter weight of z
        let mut sub_space = Subspace::new(idx.len());
        for (z, wt) in wtilde.iter().enumerate() {
            if &letter_w[z] == w && !vec_is_zero(wt) {
                // check containment in the kernel once
                assert!(vec_is_zero(&phi.apply(wt)), "wtilde must lie in ker phi");
                sub_space.adjoin(wt);
                wtilde_checked += 1;
            }
        }
        let mut space = sub_space.clone();
        for v in &kernel_block {
            if space.adjoin(v) {
                rep_rows.push(v.clone());
                rep_weights.push(w.clone());
            }
        }
    }
    assert_eq!(wtilde_checked, dim_w, "wtilde is 8-dimensional");
    assert_eq!(rep_rows.len(), 40);
    // quotient coordinates: basis = wtilde ++ reps; take the rep components
    let mut all_rows: Vec<Vec<F3>> = wtilde.clone();
    all_rows.extend(rep_rows.iter().cloned());
    let coords = crate::linalg::CoordBasis::new(&all_rows);
    let quo = |v: &[F3]| -> Vec<F3> {
        let co = coords.coords(v).expect("vector must lie in ker phi");
        co[dim_w..].to_vec()
    };
    let action: Vec<Mat> = sp
        .iter()
        .map(|op| {
            let big = wedge3_action(op, &idx);
            let m = rep_rows.len();
            let mut out = Mat::zeros(m, m);
            for (c, bv) in rep_rows.iter().enumerate() {
                let img = big.apply(bv);
                let co = quo(&img);
                for r in 0..m {
                    out[(r, c)] = co[r];
                }
            }
            out
        })
        .collect();
    // class of b1 ^ b2 ^ b3
    let hw_col = idx.iter().position(|&t| t == (n, n + 1, n + 2)).unwrap();
    let mut hw_full = vec![ZERO; idx.len()];
    hw_full[hw_col] = ONE;
    let hw_vector = quo(&hw_full);
    assert!(!vec_is_zero(&hw_vector));
    let order: Vec<usize> = (0..n).collect();
    ExteriorModel {
        dim: rep_rows.len(),
        positive: positive_indices(&sp_w, &order),
        action,
        weights: rep_weights,
        hw_vector,
        hw_weight: vec![1, 1, 1, 0],
    }
}

fn lambda2_quotient_model() -> ExteriorModel {
    let n = 3;
    let dim_w = 2 * n;
    let (sp, sp_w, letter_w) = sp_basis(n);
    // Lambda^2 basis
    let mut idx = Vec::new();
    for i in 0..dim_w {
        for j in (i + 1)..dim_w {
            idx.push((i, j));
        }
    }
    let form = |x: usize, y: usize| -> F3 {
        if x < n && y >= n && y - n == x {
            ONE
        } else if y < n && x >= n && x - n == y {
            -ONE
        } else {
            ZERO
        }
    };
    // phi : Lambda^2 -> k
    let mut phi_row = vec![ZERO; idx.len()];
    for (c, &(i, j)) in idx.iter().enumerate() {
        phi_row[c] = form(i, j);
    }
    // omega = sum a_i ^ b_i lies in the kernel (char 3)
    let mut omega = vec![ZERO; idx.len()];
    for i in 0..n {
        let col = idx.iter().position(|&x| x == (i, n + i)).unwrap();
        omega[col] = ONE;
    }
    {
        let mut acc = ZERO;
        for (c, v) in omega.iter().enumerate() {
            acc += *v * phi_row[c];
        }
        assert!(acc.is_zero(), "omega must be isotropic in characteristic 3");
    }
    let kernel = Mat::from_rows(vec![phi_row]).nullspace();
    assert_eq!(kernel.len(), 14);
    // quotient representatives: kernel vectors independent of omega,
    // weight block by weight block
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (c, &(i, j)) in idx.iter().enumerate() {
        blocks
            .entry(wedge_weight(&letter_w, &[i, j]))
            .or_default()
            .push(c);
    }
    let mut rep_rows = Vec::new();
    let mut rep_weights = Vec::new();
    let mut ker_space = Subspace::new(idx.len());
    for v in &kernel {
        ker_space.adjoin(v);
    }
    for (w, cols) in &blocks {
        let mut space = Subspace::new(idx.len());
        space.adjoin(&omega);
        for v in ker_space.basis() {
            let inside = v
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || cols.contains(&i));
            if inside && space.adjoin(v) {
                rep_rows.push(v.clone());
                rep_weights.push(w.clone());
            }
        }
    }
    assert_eq!(rep_rows.len(), 13);
    let mut all_rows = vec![omega.clone()];
    all_rows.extend(rep_rows.iter().cloned());
    let coords = crate::linalg::CoordBasis::new(&all_rows);
    let quo = |v: &[F3]| -> Vec<F3> {
        coords.coords(v).expect("vector in kernel")[1..].to_vec()
    };
    // wedge-2 action by derivation
    let wedge2_action = |op: &Mat| -> Mat {
        let pos: BTreeMap<(usize, usize), usize> =
            idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut out = Mat::zeros(idx.len(), idx.len());
        for (col, &(i, j)) in idx.iter().enumerate() {
            for r in 0..dim_w {
                // op(e_i) ^ e_j
                let c = op[(r, i)];
                if !c.is_zero() && r != j {
                    let (a, b, s) = if r < j { (r, j, c) } else { (j, r, -c) };
                    out[(pos[&(a, b)], col)] += s;
                }
                let c = op[(r, j)];
                if !c.is_zero() && i != r {
                    let (a, b, s) = if i < r { (i, r, c) } else { (r, i, -c) };
                    out[(pos[&(a, b)], col)] += s;
                }
            }
        }
        out
    };
    let action: Vec<Mat> = sp
        .iter()
        .map(|op| {
            let big = wedge2_action(op);
            let m = rep_rows.len();
            let mut out = Mat::zeros(m, m);
            for (c, bv) in rep_rows.iter().enumerate() {
                let img = big.apply(bv);
                let co = quo(&img);
                for r in 0..m {
                    out[(r, c)] = co[r];
                }
            }
            out
        })
        .collect();
    // class of b2 ^ b3 (ascending delta priority makes it the highest)
    let hw_col = idx.iter().position(|&t| t == (n + 1, n + 2)).unwrap();
    let mut hw_full = vec![ZERO; idx.len()];
    hw_full[hw_col] = ONE;
    let hw_vector = quo(&hw_full);
    // ascending order: delta_3 most significant
    let order: Vec<usize> = (0..n).rev().collect();
    ExteriorModel {
        dim: rep_rows.len(),
        positive: positive_indices(&sp_w, &order),
        action,
        weights: rep_weights,
        hw_vector,
        hw_weight: vec![0, 1, 1],
    }
}

/// The model's highest-weight vector is killed by every positive root
/// vector and carries the stated weight.
pub fn verify_exterior_hw(m: &ExteriorModel) -> bool {
    for &p in &m.positive {
        if !vec_is_zero(&m.action[p].apply(&m.hw_vector)) {
            return false;
        }
    }
    // homogeneous support with the stated weight
    m.hw_vector
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || m.weights[i] == m.hw_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::magic::{build_pair, AlgName};
    use crate::roots::grade_entry;

    fn graded(l: AlgName, r: AlgName) -> GradedEntry {
        let e = build_pair(l, r);
        grade_entry(&e, l, r).unwrap()
    }

    #[test]
    fn odd_module_dims_and_representation() {
        let ge = graded(AlgName::S1, AlgName::S42);
        let rep = odd_module(&ge);
        assert_eq!(rep.dim, 14);
        assert_eq!(verify_representation(&ge, &rep), 0);
        // weight multiset ties to the odd roots
        let gold = golden::golden_for("S1,S42").unwrap();
        let mut want = (gold.phi_odd)();
        want.sort();
        assert_eq!(weight_multiset(&rep), want);
    }

    #[test]
    fn highest_weight_s1_s42() {
        let ge = graded(AlgName::S1, AlgName::S42);
        let rep = odd_module(&ge);
        let gold = golden::golden_for("S1,S42").unwrap();
        let hw = highest_weight_vectors(&ge, &rep, gold.order);
        assert_eq!(hw.len(), 1);
        assert_eq!(hw[0].0, vec![1, 1, 1]);
        assert_eq!(hw[0].1.len(), 1);
        // the vector is the odd tri element w@w@w
        let idx = rep
            .odd_index
            .iter()
            .position(|&i| ge.g.basis[i].label.contains("w@w@w"))
            .unwrap();
        let v = &hw[0].1[0];
        assert!(v.iter().enumerate().all(|(i, c)| c.is_zero() || i == idx));
    }

    #[test]
    fn norton_irreducible_s1_s42() {
        let ge = graded(AlgName::S1, AlgName::S42);
        let rep = odd_module(&ge);
        assert_eq!(
            norton_irreducible(&rep.action, rep.dim, 1),
            NortonVerdict::Irreducible
        );
    }

    #[test]
    fn norton_reducible_s1_s12() {
        let ge = graded(AlgName::S1, AlgName::S12);
        let rep = odd_module(&ge);
        match norton_irreducible(&rep.action, rep.dim, 1) {
            NortonVerdict::Reducible { witness_dim } => assert_eq!(witness_dim, 4),
            v => panic!("expected reducible, got {}", v),
        }
        let gold = golden::golden_for("S1,S12").unwrap();
        let hw = highest_weight_vectors(&ge, &rep, gold.order);
        let (d1, d2) = two_copies_decomposition(&rep, &hw, 4).unwrap();
        assert_eq!((d1, d2), (4, 4));
    }

    #[test]
    fn exterior_sp6_lambda3() {
        let m = exterior_model(ExteriorKind::Sp6Lambda3);
        assert_eq!(m.dim, 14);
        assert!(verify_exterior_hw(&m));
        // weights match the odd part of g(S1,S42)
        let ge = graded(AlgName::S1, AlgName::S42);
        let rep = odd_module(&ge);
        let mut w1 = m.weights.clone();
        w1.sort();
        assert_eq!(w1, weight_multiset(&rep));
        assert_eq!(
            norton_irreducible(&m.action, m.dim, 1),
            NortonVerdict::Irreducible
        );
    }

    #[test]
    fn exterior_sp8_lambda3() {
        let m = exterior_model(ExteriorKind::Sp8Lambda3);
        assert_eq!(m.dim, 40);
        assert!(verify_exterior_hw(&m));
        let ge = graded(AlgName::S12, AlgName::S42);
        let rep = odd_module(&ge);
        let mut w1 = m.weights.clone();
        w1.sort();
        assert_eq!(w1, weight_multiset(&rep));
    }

    #[test]
    fn exterior_sp6_lambda2() {
        let m = exterior_model(ExteriorKind::Sp6Lambda2);
        assert_eq!(m.dim, 13);
        assert!(verify_exterior_hw(&m));
        // tensor with the natural 2-dim module matches the odd part of
        // g(S4,S12): weights (w, +-1) in the e4 slot
        let ge = graded(AlgName::S4, AlgName::S12);
        let rep = odd_module(&ge);
        let mut tens: Vec<Vec<i64>> = Vec::new();
        for w in &m.weights {
            for s in [1i64, -1] {
                let mut v = w.clone();
                v.push(s);
                tens.push(v);
            }
        }
        tens.sort();
        assert_eq!(tens, weight_multiset(&rep));
    }
}
