//! Canonical-form machinery: Krylov annihilators, maximal vectors through
//! factorization-free lcm merging, the cyclic decomposition behind the
//! Frobenius normal form, similarity witnesses between non-derogatory
//! matrices, and the prescribed-column basis completion.

use crate::error::{Error, Result};
use crate::fields::{FieldTower, Level};
use crate::polyring::Poly;

use super::{companion, FFMatrix, SimilarityWitness};

/// Frobenius normal form: companion blocks of the invariant factors
/// P_1 | P_2 | ... | P_s, sizes ascending, with an invertible witness U
/// satisfying U^{-1} A U = diag(C_{P_1}, ..., C_{P_s}).
#[derive(Debug, Clone)]
pub struct FrobeniusForm {
    level: Level,
    invariant_factors: Vec<Poly>,
    witness: SimilarityWitness,
}

impl FrobeniusForm {
    /// The invariant factors, ascending by degree with P_i | P_{i+1}.
    pub fn invariant_factors(&self) -> &[Poly] {
        &self.invariant_factors
    }

    /// Companion blocks in order.
    pub fn blocks(&self, tower: &FieldTower) -> Vec<FFMatrix> {
        self.invariant_factors
            .iter()
            .map(|p| companion(tower, p).expect("invariant factors are monic nonconstant"))
            .collect()
    }

    /// The block-diagonal normal form itself.
    pub fn form_matrix(&self, tower: &FieldTower) -> FFMatrix {
        let n: usize = self
            .invariant_factors
            .iter()
            .map(|p| p.degree().unwrap())
            .sum();
        let mut out = FFMatrix::zero(self.level, n);
        let mut offset = 0usize;
        for block in self.blocks(tower) {
            for i in 0..block.dim() {
                for j in 0..block.dim() {
                    out.set(offset + i, offset + j, block.at(i, j));
                }
            }
            offset += block.dim();
        }
        out
    }

    /// Witness with relation U^{-1} A U = form_matrix for the original A.
    pub fn witness(&self) -> &SimilarityWitness {
        &self.witness
    }

    /// Product of the invariant factors (monic, degree n).
    pub fn char_poly(&self, tower: &FieldTower) -> Poly {
        let mut acc = Poly::one(self.level);
        for f in &self.invariant_factors {
            acc = acc.mul(tower, f);
        }
        acc
    }

    /// The largest invariant factor.
    pub fn min_poly(&self) -> &Poly {
        self.invariant_factors.last().expect("at least one block")
    }
}

/// Minimal monic f with f(B)v = 0, found by Gaussian elimination on the
/// Krylov iterates of v.
fn krylov_annihilator(tower: &FieldTower, b: &FFMatrix, v: &[u64]) -> Poly {
    let n = b.dim();
    let level = b.level();
    // echelon rows: (pivot position, reduced vector, combination over iterates)
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut iterate = v.to_vec();
    for j in 0..=n {
        let mut r = iterate.clone();
        let mut combo = vec![0u64; j + 1];
        combo[j] = 1;
        for (pivot, rv, rc) in &rows {
            if r[*pivot] == 0 {
                continue;
            }
            let factor = tower
                .idx_mul(level, r[*pivot], tower.idx_inv(level, rv[*pivot]).unwrap());
            for (slot, &x) in r.iter_mut().zip(rv) {
                *slot = tower.idx_sub(level, *slot, tower.idx_mul(level, factor, x));
            }
            for (i, &c) in rc.iter().enumerate() {
                combo[i] = tower.idx_sub(level, combo[i], tower.idx_mul(level, factor, c));
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => {
                // dependency: sum combo_i B^i v = 0, monic of degree j
                return Poly::new(level, combo);
            }
            Some(pivot) => {
                rows.push((pivot, r, combo));
            }
        }
        iterate = b.mat_vec(tower, &iterate);
    }
    unreachable!("n+1 Krylov iterates are always dependent")
}

/// Split lcm(f, g) = f1 * g1 with f1 | f, g1 | g, gcd(f1, g1) = 1, using only
/// gcds: start from f / gcd(f, g) and saturate it against the shared part.
fn coprime_split(tower: &FieldTower, f: &Poly, g: &Poly) -> (Poly, Poly) {
    let h = f.gcd(tower, g).expect("gcd of annihilators");
    let mut f1 = f.divmod(tower, &h).expect("h divides f").0.make_monic(tower).unwrap();
    let mut shared = h.clone();
    loop {
        let d = f1.gcd(tower, &shared).unwrap();
        if d.degree() == Some(0) {
            break;
        }
        f1 = f1.mul(tower, &d);
        shared = shared.divmod(tower, &d).expect("d divides shared").0;
    }
    let lcm = f
        .mul(tower, g)
        .divmod(tower, &h)
        .expect("gcd divides product")
        .0;
    let g1 = lcm
        .divmod(tower, &f1)
        .expect("f1 divides lcm")
        .0
        .make_monic(tower)
        .unwrap();
    (f1, g1)
}

/// A vector whose annihilator is the minimal polynomial of B, together with
/// that polynomial. Standard basis vectors are scanned first; whenever a new
/// one enlarges the lcm, the two generators merge into one that attains it.
fn maximal_vector(tower: &FieldTower, b: &FFMatrix) -> (Vec<u64>, Poly) {
    let n = b.dim();
    let level = b.level();
    let mut v = vec![0u64; n];
    v[0] = 1;
    let mut f = krylov_annihilator(tower, b, &v);
    for i in 1..n {
        if f.degree() == Some(n) {
            break;
        }
        let mut e = vec![0u64; n];
        e[i] = 1;
        let g = krylov_annihilator(tower, b, &e);
        if f.rem(tower, &g).map(|r| r.is_zero()).unwrap_or(false) {
            continue; // g | f adds nothing
        }
        let (f1, g1) = coprime_split(tower, &f, &g);
        // (f/f1)(B)v has annihilator f1; (g/g1)(B)e has annihilator g1;
        // coprime annihilators add up to their product.
        let fq = f.divmod(tower, &f1).unwrap().0;
        let gq = g.divmod(tower, &g1).unwrap().0;
        let part1 = b.apply_poly_vec(tower, &fq, &v);
        let part2 = b.apply_poly_vec(tower, &gq, &e);
        v = part1
            .iter()
            .zip(&part2)
            .map(|(&x, &y)| tower.idx_add(level, x, y))
            .collect();
        f = f1.mul(tower, &g1);
        debug_assert_eq!(krylov_annihilator(tower, b, &v), f);
    }
    (v, f)
}

/// Minimal polynomial of B (the largest invariant factor).
pub fn minimal_polynomial(tower: &FieldTower, b: &FFMatrix) -> Poly {
    maximal_vector(tower, b).1
}

/// Krylov matrix [v, Bv, ..., B^{d-1}v] as an n x d column list.
fn krylov_columns(tower: &FieldTower, b: &FFMatrix, v: &[u64], d: usize) -> Vec<Vec<u64>> {
    let mut cols = Vec::with_capacity(d);
    let mut w = v.to_vec();
    for _ in 0..d {
        cols.push(w.clone());
        w = b.mat_vec(tower, &w);
    }
    cols
}

/// Generators of the cyclic decomposition, largest invariant factor first.
/// Each generator is returned in the coordinates of the current space.
fn decompose(tower: &FieldTower, b: &FFMatrix) -> Vec<(Vec<u64>, Poly)> {
    let n = b.dim();
    let level = b.level();
    if n == 0 {
        return Vec::new();
    }
    let (v, mu) = maximal_vector(tower, b);
    let d = mu.degree().unwrap();
    if d == n {
        return vec![(v, mu)];
    }
    // basis T = [Krylov(v) | chosen standard vectors], block-triangularizing B
    let krylov = krylov_columns(tower, b, &v, d);
    let t_cols = extend_to_basis(tower, level, n, &krylov);
    let t = columns_to_matrix(level, n, &t_cols);
    let t_inv = t.inverse(tower).expect("basis extension is invertible");
    let m = t_inv.mul(tower, b).mul(tower, &t);
    // lower-left block must vanish: the cyclic subspace is invariant
    for i in d..n {
        for j in 0..d {
            debug_assert_eq!(m.at(i, j), 0);
        }
    }
    let sub_dim = n - d;
    let mut bbar = FFMatrix::zero(level, sub_dim);
    for i in 0..sub_dim {
        for j in 0..sub_dim {
            bbar.set(i, j, m.at(d + i, d + j));
        }
    }
    let mut out = vec![(v.clone(), mu.clone())];
    for (wbar, g) in decompose(tower, &bbar) {
        // lift the quotient generator: w' = T * (0_d, wbar)
        let mut coords = vec![0u64; n];
        coords[d..].copy_from_slice(&wbar);
        let w_lift = t.mat_vec(tower, &coords);
        // g(B)w' lies in the cyclic subspace; express it as h(B)v
        let z = b.apply_poly_vec(tower, &g, &w_lift);
        let h = solve_in_krylov(tower, level, &krylov, &z);
        // mu(B)w' = 0 forces g | h, so the correction lands back on w'
        let (hq, hr) = h.divmod(tower, &g).expect("g is nonzero");
        assert!(hr.is_zero(), "cyclic correction failed: g does not divide h");
        let corr = b.apply_poly_vec(tower, &hq, &v);
        let w: Vec<u64> = w_lift
            .iter()
            .zip(&corr)
            .map(|(&x, &y)| tower.idx_sub(level, x, y))
            .collect();
        debug_assert_eq!(krylov_annihilator(tower, b, &w), g);
        out.push((w, g));
    }
    out
}

/// Extend the given independent columns to a full basis using the least
/// standard basis vectors that keep independence.
fn extend_to_basis(
    tower: &FieldTower,
    level: Level,
    n: usize,
    start: &[Vec<u64>],
) -> Vec<Vec<u64>> {
    let mut cols: Vec<Vec<u64>> = start.to_vec();
    // echelon bookkeeping over current columns
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let reduce = |mut r: Vec<u64>, echelon: &Vec<(usize, Vec<u64>)>| -> Vec<u64> {
        for (pivot, rv) in echelon {
            if r[*pivot] == 0 {
                continue;
            }
            let factor =
                tower.idx_mul(level, r[*pivot], tower.idx_inv(level, rv[*pivot]).unwrap());
            for (slot, &x) in r.iter_mut().zip(rv) {
                *slot = tower.idx_sub(level, *slot, tower.idx_mul(level, factor, x));
            }
        }
        r
    };
    for c in start {
        let r = reduce(c.clone(), &echelon);
        let pivot = r.iter().position(|&x| x != 0).expect("start columns independent");
        echelon.push((pivot, r));
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![0u64; n];
        e[i] = 1;
        let r = reduce(e.clone(), &echelon);
        if let Some(pivot) = r.iter().position(|&x| x != 0) {
            echelon.push((pivot, r));
            cols.push(e);
        }
    }
    assert_eq!(cols.len(), n, "failed to extend to a basis");
    cols
}

fn columns_to_matrix(level: Level, n: usize, cols: &[Vec<u64>]) -> FFMatrix {
    let mut m = FFMatrix::zero(level, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// Express z as a combination of the Krylov columns; returns the polynomial
/// whose coefficients are those coordinates.
fn solve_in_krylov(
    tower: &FieldTower,
    level: Level,
    krylov: &[Vec<u64>],
    z: &[u64],
) -> Poly {
    let n = z.len();
    let d = krylov.len();
    // least-squares-free exact solve: [K | z] elimination
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r: Vec<u64> = krylov.iter().map(|c| c[i]).collect();
            r.push(z[i]);
            r
        })
        .collect();
    let mut pivots: Vec<Option<usize>> = vec![None; d];
    let mut rank_row = 0usize;
    for col in 0..d {
        let Some(pr) = (rank_row..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank_row, pr);
        let inv = tower.idx_inv(level, rows[rank_row][col]).unwrap();
        for x in rows[rank_row].iter_mut() {
            *x = tower.idx_mul(level, *x, inv);
        }
        for r in 0..n {
            if r == rank_row || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for cc in 0..=d {
                let v = tower.idx_sub(
                    level,
                    rows[r][cc],
                    tower.idx_mul(level, factor, rows[rank_row][cc]),
                );
                rows[r][cc] = v;
            }
        }
        pivots[col] = Some(rank_row);
        rank_row += 1;
    }
    let mut coeffs = vec![0u64; d];
    for (col, pv) in pivots.iter().enumerate() {
        if let Some(r) = pv {
            coeffs[col] = rows[*r][d];
        }
    }
    // consistency: rows beyond the rank must have zero rhs
    for row in rows.iter().skip(rank_row) {
        assert_eq!(row[d], 0, "vector lies outside the cyclic subspace");
    }
    Poly::new(level, coeffs)
}

/// Invariant-factor decomposition with an explicit, re-verified witness.
pub fn frobenius_form(tower: &FieldTower, a: &FFMatrix) -> FrobeniusForm {
    let level = a.level();
    let n = a.dim();
    let mut gens = decompose(tower, a);
    // decompose returns the largest factor first; blocks go ascending
    gens.reverse();
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
    for (v, f) in &gens {
        cols.extend(krylov_columns(tower, a, v, f.degree().unwrap()));
    }
    let u = columns_to_matrix(level, n, &cols);
    let witness = SimilarityWitness::new(tower, u).expect("cyclic bases are independent");
    let form = FrobeniusForm {
        level,
        invariant_factors: gens.into_iter().map(|(_, f)| f).collect(),
        witness,
    };
    // invariant-factor chain and witness relation are checked at construction
    let fm = form.form_matrix(tower);
    assert!(
        form.witness.verify(tower, &fm, a),
        "Frobenius form witness failed to verify"
    );
    for w in form.invariant_factors.windows(2) {
        assert!(
            w[1].rem(tower, &w[0]).map(|r| r.is_zero()).unwrap_or(false),
            "invariant factor divisibility chain broken"
        );
    }
    form
}

/// Witness U with U^{-1} B U = A for non-derogatory A, B sharing one
/// characteristic polynomial, built from cyclic vectors of each side.
pub fn cyclic_similarity(
    tower: &FieldTower,
    a: &FFMatrix,
    b: &FFMatrix,
) -> Result<SimilarityWitness> {
    if a.dim() != b.dim() || a.level() != b.level() {
        return Err(Error::NotSimilar("dimension or level mismatch".into()));
    }
    let n = a.dim();
    let (va, fa) = maximal_vector(tower, a);
    if fa.degree() != Some(n) {
        return Err(Error::NotSimilar("first matrix is derogatory".into()));
    }
    let (vb, fb) = maximal_vector(tower, b);
    if fb.degree() != Some(n) {
        return Err(Error::NotSimilar("second matrix is derogatory".into()));
    }
    if fa != fb {
        return Err(Error::NotSimilar(
            "characteristic polynomials differ".into(),
        ));
    }
    let ka = columns_to_matrix(a.level(), n, &krylov_columns(tower, a, &va, n));
    let kb = columns_to_matrix(b.level(), n, &krylov_columns(tower, b, &vb, n));
    let u = kb.mul(tower, &ka.inverse(tower)?);
    let witness = SimilarityWitness::new(tower, u)?;
    debug_assert!(witness.verify(tower, a, b));
    Ok(witness)
}

/// Prescription for the first n-1 columns of an n x n matrix: every
/// subdiagonal entry nonzero, everything below the subdiagonal zero.
/// Stored as columns.
#[derive(Debug, Clone)]
pub struct ColumnPrescription {
    pub n: usize,
    /// `cols[j][i]` is entry (i, j), for j < n-1.
    pub cols: Vec<Vec<u64>>,
}

impl ColumnPrescription {
    pub fn new(n: usize, cols: Vec<Vec<u64>>) -> Result<Self> {
        if cols.len() + 1 != n || cols.iter().any(|c| c.len() != n) {
            return Err(Error::PrescriptionViolation(format!(
                "expected {} columns of height {n}",
                n - 1
            )));
        }
        for (j, col) in cols.iter().enumerate() {
            if col[j + 1] == 0 {
                return Err(Error::PrescriptionViolation(format!(
                    "subdiagonal entry ({}, {j}) is zero",
                    j + 1
                )));
            }
            for (i, &v) in col.iter().enumerate().skip(j + 2) {
                if v != 0 {
                    return Err(Error::PrescriptionViolation(format!(
                        "entry ({i}, {j}) below the subdiagonal is nonzero"
                    )));
                }
            }
        }
        Ok(ColumnPrescription { n, cols })
    }

    /// The first n-1 columns of an existing matrix.
    pub fn from_matrix(m: &FFMatrix) -> Result<Self> {
        let n = m.dim();
        let cols = (0..n - 1)
            .map(|j| (0..n).map(|i| m.at(i, j)).collect())
            .collect();
        Self::new(n, cols)
    }
}

/// Complete prescribed first columns to a full matrix similar to B: build the
/// basis f_1 = e_1, f_{j+1} = a_{(j+1)j}^{-1} (B f_j - sum_{i<=j} a_{ij} f_i)
/// against the companion form of B, so A = F^{-1} C F carries exactly the
/// prescription in its first n-1 columns. Returns A and a witness with
/// U^{-1} B U = A.
pub fn complete_prescribed_columns(
    tower: &FieldTower,
    b: &FFMatrix,
    prescription: &ColumnPrescription,
) -> Result<(FFMatrix, SimilarityWitness)> {
    let n = b.dim();
    let level = b.level();
    if prescription.n != n {
        return Err(Error::PrescriptionViolation(
            "prescription size does not match the matrix".into(),
        ));
    }
    let (_, minpoly) = maximal_vector(tower, b);
    if minpoly.degree() != Some(n) {
        return Err(Error::DegenerateBasis);
    }
    if n == 1 {
        // no columns to prescribe; A = B trivially
        return Ok((b.clone(), SimilarityWitness::identity(level, 1)));
    }
    let c = companion(tower, &minpoly)?;
    let to_companion = cyclic_similarity(tower, &c, b)?; // U^{-1} B U = C
    // basis completion against C, where e_1 is cyclic
    let mut fs: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut e1 = vec![0u64; n];
    e1[0] = 1;
    fs.push(e1);
    for j in 0..n - 1 {
        let col = &prescription.cols[j];
        let mut next = c.mat_vec(tower, &fs[j]);
        for (i, fv) in fs.iter().enumerate().take(j + 1) {
            let coeff = col[i];
            if coeff == 0 {
                continue;
            }
            for (slot, &x) in next.iter_mut().zip(fv) {
                *slot = tower.idx_sub(level, *slot, tower.idx_mul(level, coeff, x));
            }
        }
        let inv = tower.idx_inv(level, col[j + 1]).map_err(|_| {
            Error::PrescriptionViolation("subdiagonal entry not invertible".into())
        })?;
        for slot in next.iter_mut() {
            *slot = tower.idx_mul(level, *slot, inv);
        }
        fs.push(next);
    }
    let f = columns_to_matrix(level, n, &fs);
    let f_inv = f.inverse(tower).map_err(|_| Error::DegenerateBasis)?;
    let a = f_inv.mul(tower, &c).mul(tower, &f);
    // the construction must reproduce the prescription exactly
    for (j, col) in prescription.cols.iter().enumerate() {
        for (i, &want) in col.iter().enumerate() {
            if a.at(i, j) != want {
                return Err(Error::ShapeViolation(format!(
                    "completed matrix disagrees with the prescription at ({i}, {j})"
                )));
            }
        }
    }
    let witness_f = SimilarityWitness::new(tower, f)?;
    let witness = to_companion.compose(tower, &witness_f);
    debug_assert!(witness.verify(tower, &a, b));
    Ok((a, witness))
}
