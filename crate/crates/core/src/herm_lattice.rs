//! Hermitian O_K-lattices in V = K^3 with the form (u,v) = u-bar^t J v,
//! where
//!
//! ```text
//!       (            1/delta )
//!   J = (        1           )        delta = sqrt(-D)
//!       ( -1/delta           )
//! ```
//!
//! Lattices are stored by Z-bases of rank 6 rather than O_K-pseudo-bases:
//! this avoids ideal arithmetic and works uniformly for shifted cosets.
//! Stability under multiplication by omega is an invariant check, not a
//! representation constraint. Coordinates of K are taken in the basis
//! {1, delta} with exact rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, hnf, integer_left_kernel, qmat_det, qmat_inverse, qmat_kernel, QMatrix,
};
use crate::quad_field::FieldCtx;

/// Element a + b*sqrt(-D) of K with rational a, b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kq {
    pub a: BigRational,
    pub b: BigRational,
}

impl Kq {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Kq { a, b }
    }

    pub fn zero() -> Self {
        Kq::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Kq::new(BigRational::one(), BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Kq::new(BigRational::from(BigInt::from(n)), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Kq {
        Kq::new(self.a.clone(), -self.b.clone())
    }

    pub fn add(&self, o: &Kq) -> Kq {
        Kq::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Kq) -> Kq {
        Kq::new(&self.a - &o.a, &self.b - &o.b)
    }

    /// (a + b d)(c + e d) with d^2 = -D.
    pub fn mul(&self, o: &Kq, d: u64) -> Kq {
        let dd = BigRational::from(BigInt::from(d as i64));
        Kq::new(
            &self.a * &o.a - (&self.b * &o.b) * &dd,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    /// Trace over Q: x + x-bar = 2a.
    pub fn trace(&self) -> BigRational {
        BigRational::from(BigInt::from(2)) * &self.a
    }
}

pub type Vec3 = [Kq; 3];

fn flatten(v: &Vec3) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(6);
    for x in v {
        out.push(x.a.clone());
        out.push(x.b.clone());
    }
    out
}

fn unflatten(v: &[BigRational]) -> Vec3 {
    [
        Kq::new(v[0].clone(), v[1].clone()),
        Kq::new(v[2].clone(), v[3].clone()),
        Kq::new(v[4].clone(), v[5].clone()),
    ]
}

/// omega = (1 + delta)/2 or delta, depending on D mod 4.
pub fn omega_kq(ctx: &FieldCtx) -> Kq {
    if ctx.omega_is_half() {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Kq::new(half.clone(), half)
    } else {
        Kq::new(BigRational::zero(), BigRational::one())
    }
}

/// The hermitian pairing (u,v) = u1-bar v3/delta + u2-bar v2 - u3-bar v1/delta.
pub fn herm_pairing(ctx: &FieldCtx, u: &Vec3, v: &Vec3) -> Kq {
    let d = ctx.d();
    // 1/delta = -delta/D
    let inv_delta = Kq::new(
        BigRational::zero(),
        BigRational::new(BigInt::from(-1), BigInt::from(d as i64)),
    );
    let t1 = u[0].conj().mul(&v[2], d);
    let t3 = u[2].conj().mul(&v[0], d);
    let middle = u[1].conj().mul(&v[1], d);
    inv_delta.mul(&t1.sub(&t3), d).add(&middle)
}

pub fn scalar_mul(c: &Kq, v: &Vec3, d: u64) -> Vec3 {
    [c.mul(&v[0], d), c.mul(&v[1], d), c.mul(&v[2], d)]
}

/// A full O_K-lattice in K^3, stored by a Z-basis of rank 6 together with
/// its trace-form Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermLattice {
    ctx: FieldCtx,
    basis: Vec<Vec3>,
    gram: QMatrix,
    basis_inv: QMatrix,
}

impl HermLattice {
    /// The standard lattice O_K^3.
    pub fn standard(ctx: &FieldCtx) -> HermLattice {
        let om = omega_kq(ctx);
        let mut basis = Vec::with_capacity(6);
        for i in 0..3 {
            let mut e = [Kq::zero(), Kq::zero(), Kq::zero()];
            e[i] = Kq::one();
            basis.push(e.clone());
            basis.push(scalar_mul(&om, &e, ctx.d()));
        }
        HermLattice::from_zbasis(ctx.clone(), basis).expect("standard lattice is well formed")
    }

    /// Build a lattice from six Z-generators, checking full rank and
    /// stability under omega.
    pub fn from_zbasis(ctx: FieldCtx, basis: Vec<Vec3>) -> Result<HermLattice> {
        if basis.len() != 6 {
            return Err(Error::NotFullRank);
        }
        let bmat: QMatrix = basis.iter().map(flatten).collect();
        let basis_inv = qmat_inverse(&bmat).ok_or(Error::NotFullRank)?;
        let lat = HermLattice {
            gram: gram_of(&ctx, &basis),
            ctx,
            basis,
            basis_inv,
        };
        let om = omega_kq(&lat.ctx);
        for v in &lat.basis {
            if !lat.contains(&scalar_mul(&om, v, lat.ctx.d())) {
                return Err(Error::NotOkStable);
            }
        }
        Ok(lat)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn basis(&self) -> &[Vec3] {
        &self.basis
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Coordinates of a vector in this Z-basis.
    pub fn coords(&self, v: &Vec3) -> Vec<BigRational> {
        let f = flatten(v);
        (0..6)
            .map(|j| (0..6).map(|i| &f[i] * &self.basis_inv[i][j]).sum())
            .collect()
    }

    pub fn contains(&self, v: &Vec3) -> bool {
        self.coords(v).iter().all(|c| c.is_integer())
    }

    /// The dual lattice {v : tr((u,v)) in Z for all u in L}, via the
    /// inverse of the trace Gram matrix.
    pub fn dual(&self) -> Result<HermLattice> {
        let sinv = qmat_inverse(&self.gram).ok_or(Error::SingularGram)?;
        let mut dual_basis = Vec::with_capacity(6);
        for row in &sinv {
            // dual basis vector = sum_k row[k] * basis[k]
            let mut acc = [Kq::zero(), Kq::zero(), Kq::zero()];
            for (k, b) in self.basis.iter().enumerate() {
                let c = Kq::new(row[k].clone(), BigRational::zero());
                let t = scalar_mul(&c, b, self.ctx.d());
                for i in 0..3 {
                    acc[i] = acc[i].add(&t[i]);
                }
            }
            dual_basis.push(acc);
        }
        HermLattice::from_zbasis(self.ctx.clone(), dual_basis)
    }

    /// |det gram| = index of L in its dual.
    pub fn index_in_dual(&self) -> BigRational {
        qmat_det(&self.gram).abs()
    }

    /// Trace-integrality of the form on L.
    pub fn is_integral(&self) -> bool {
        self.gram.iter().all(|row| row.iter().all(|x| x.is_integer()))
    }

    pub fn is_dual_of_integral(&self) -> bool {
        self.dual().map(|d| d.is_integral()).unwrap_or(false)
    }

    /// Equality of Z-spans, via Hermite normal forms of the scaled bases.
    pub fn same_span(&self, other: &HermLattice) -> bool {
        let a: QMatrix = self.basis.iter().map(flatten).collect();
        let b: QMatrix = other.basis.iter().map(flatten).collect();
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        let (_, den) = clear_denominators(&all);
        let scale = |m: &QMatrix| -> Vec<Vec<BigInt>> {
            m.iter()
                .map(|row| {
                    row.iter()
                        .map(|x| (x * BigRational::from(den.clone())).to_integer())
                        .collect()
                })
                .collect()
        };
        hnf(&scale(&a)) == hnf(&scale(&b))
    }

    /// The binary form of the rank-one sublattice L cap <w>, optionally
    /// shifted by a vector of the K-line of w.
    pub fn rank_one(&self, w: &Vec3, shift: Option<&Vec3>) -> Result<RankOneForm> {
        let ww = herm_pairing(&self.ctx, w, w);
        if !ww.b.is_zero() {
            return Err(Error::Internal("hermitian norm has nonzero imaginary part"));
        }
        if ww.a.is_zero() {
            return Err(Error::IsotropicVector);
        }
        if ww.a.is_negative() {
            return Err(Error::NegativeVector);
        }
        let d = self.ctx.d();
        let delta = Kq::new(BigRational::zero(), BigRational::one());
        let dw = scalar_mul(&delta, w, d);
        // rational description of the K-line of w: x in line <=> ann . x = 0
        let line = vec![flatten(w), flatten(&dw)];
        let ann = qmat_kernel(&line);
        let bmat: QMatrix = self.basis.iter().map(flatten).collect();
        // integer coefficient rows c with c.B in the line: c . (B ann^T) = 0
        let mut cond = vec![vec![BigRational::zero(); ann.len()]; 6];
        for (i, brow) in bmat.iter().enumerate() {
            for (j, arow) in ann.iter().enumerate() {
                cond[i][j] = (0..6).map(|k| &brow[k] * &arow[k]).sum();
            }
        }
        let (cond_int, _) = clear_denominators(&cond);
        let kernel = integer_left_kernel(&cond_int);
        if kernel.len() != 2 {
            return Err(Error::Internal("rank-one sublattice does not have Z-rank 2"));
        }
        let to_vec3 = |c: &Vec<BigInt>| -> Vec3 {
            let mut acc = [Kq::zero(), Kq::zero(), Kq::zero()];
            for (k, b) in self.basis.iter().enumerate() {
                let cr = Kq::new(BigRational::from(c[k].clone()), BigRational::zero());
                let t = scalar_mul(&cr, b, d);
                for i in 0..3 {
                    acc[i] = acc[i].add(&t[i]);
                }
            }
            acc
        };
        let u1 = to_vec3(&kernel[0]);
        let u2 = to_vec3(&kernel[1]);
        RankOneForm::from_pair(&self.ctx, &u1, &u2, shift)
    }
}

fn gram_of(ctx: &FieldCtx, basis: &[Vec3]) -> QMatrix {
    let n = basis.len();
    let mut g = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = herm_pairing(ctx, &basis[i], &basis[j]).trace();
        }
    }
    g
}

/// A coset L' = {v in L-dual : v = h mod L} of a lattice inside its dual.
#[derive(Debug, Clone)]
pub struct CosetLattice {
    base: HermLattice,
    shift: Vec3,
}

impl CosetLattice {
    /// The shift must lie in the dual of the base lattice.
    pub fn new(base: HermLattice, shift: Vec3) -> Result<CosetLattice> {
        for b in base.basis() {
            if !herm_pairing(base.ctx(), b, &shift).trace().is_integer() {
                return Err(Error::ShiftNotInDual);
            }
        }
        Ok(CosetLattice { base, shift })
    }

    pub fn base(&self) -> &HermLattice {
        &self.base
    }

    pub fn shift(&self) -> &Vec3 {
        &self.shift
    }

    /// Rank-one shadow of the coset along w. The shift must lie in the
    /// K-line of w; shifts transverse to the line are rejected.
    pub fn rank_one(&self, w: &Vec3) -> Result<RankOneForm> {
        self.base.rank_one(w, Some(&self.shift))
    }
}

/// Positive-definite binary form q(a,b) of a rank-one O_K-sublattice,
/// possibly with a rational coset shift, together with the discriminants
/// of the sublattice and of its dual inside the line.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneForm {
    /// q(a,b) = q11 a^2 + q12 ab + q22 b^2
    pub q11: BigRational,
    pub q12: BigRational,
    pub q22: BigRational,
    /// coset shift (s,t): counts run over q(a+s, b+t)
    pub shift: (BigRational, BigRational),
    /// O_K-discriminant d(L_sigma)
    pub disc_lat: BigRational,
    /// O_K-discriminant d(L_sigma-dual)
    pub disc_dual: BigRational,
}

impl RankOneForm {
    fn from_pair(ctx: &FieldCtx, u1: &Vec3, u2: &Vec3, shift: Option<&Vec3>) -> Result<Self> {
        let q11 = herm_pairing(ctx, u1, u1).a;
        let q22 = herm_pairing(ctx, u2, u2).a;
        let q12 = herm_pairing(ctx, u1, u2).trace();
        let two = BigRational::from(BigInt::from(2));
        let four = BigRational::from(BigInt::from(4));
        let det_tr = &four * &q11 * &q22 - &q12 * &q12;
        if !q11.is_positive() || !det_tr.is_positive() {
            return Err(Error::NegativeVector);
        }
        let abs_disc = BigRational::from(BigInt::from(ctx.disc().unsigned_abs()));
        let disc_lat = rat_sqrt(&(&det_tr / &abs_disc))
            .ok_or(Error::Internal("lattice discriminant is not a rational square"))?;
        let disc_dual = rat_sqrt(&(BigRational::one() / (&det_tr * &abs_disc)))
            .ok_or(Error::Internal("dual discriminant is not a rational square"))?;
        let (s, t) = match shift {
            None => (BigRational::zero(), BigRational::zero()),
            Some(h) => {
                // solve h = s u1 + t u2 from the flattened coordinates
                let f1 = flatten(u1);
                let f2 = flatten(u2);
                let fh = flatten(h);
                let mut sol: Option<(BigRational, BigRational)> = None;
                'outer: for i in 0..6 {
                    for j in (i + 1)..6 {
                        let det = &f1[i] * &f2[j] - &f1[j] * &f2[i];
                        if !det.is_zero() {
                            let s = (&fh[i] * &f2[j] - &fh[j] * &f2[i]) / &det;
                            let t = (&f1[i] * &fh[j] - &f1[j] * &fh[i]) / &det;
                            sol = Some((s, t));
                            break 'outer;
                        }
                    }
                }
                let (s, t) = sol.ok_or(Error::Internal("degenerate rank-one basis"))?;
                for i in 0..6 {
                    if &f1[i] * &s + &f2[i] * &t != fh[i] {
                        return Err(Error::ShiftNotInLine);
                    }
                }
                // trace-dual integrality of the shift
                let c1 = &two * &q11 * &s + &q12 * &t;
                let c2 = &q12 * &s + &two * &q22 * &t;
                if !c1.is_integer() || !c2.is_integer() {
                    return Err(Error::ShiftNotInDual);
                }
                (s.fract_floor(), t.fract_floor())
            }
        };
        Ok(RankOneForm { q11, q12, q22, shift: (s, t), disc_lat, disc_dual })
    }

    /// Build a form directly from coefficients (mainly for tests and JSON).
    pub fn from_coeffs(
        q11: BigRational,
        q12: BigRational,
        q22: BigRational,
        shift: (BigRational, BigRational),
    ) -> Result<Self> {
        let four = BigRational::from(BigInt::from(4));
        let det_tr = &four * &q11 * &q22 - &q12 * &q12;
        if !q11.is_positive() || !det_tr.is_positive() {
            return Err(Error::NegativeVector);
        }
        Ok(RankOneForm {
            q11,
            q12,
            q22,
            shift,
            disc_lat: BigRational::one(),
            disc_dual: BigRational::one(),
        })
    }

    pub fn has_shift(&self) -> bool {
        !self.shift.0.is_zero() || !self.shift.1.is_zero()
    }

    /// q evaluated at the (shifted) integer point (a, b), exactly.
    pub fn value(&self, a: i64, b: i64) -> BigRational {
        let x = BigRational::from(BigInt::from(a)) + &self.shift.0;
        let y = BigRational::from(BigInt::from(b)) + &self.shift.1;
        &self.q11 * &x * &x + &self.q12 * &x * &y + &self.q22 * &y * &y
    }

    /// Exact count of integer points with q(a+s, b+t) = n.
    pub fn count_norm(&self, n: u64) -> u64 {
        let counts = self.count_norm_upto(n);
        counts[n as usize]
    }

    /// Counts for every 0 <= n <= bound in one sweep over the ellipse.
    pub fn count_norm_upto(&self, bound: u64) -> Vec<u64> {
        let mut counts = vec![0u64; bound as usize + 1];
        let iform = self.integerized();
        let (amin, amax, bmin, bmax) = self.sweep_box(bound);
        let target_cap = BigInt::from(bound) * &iform.scale;
        for a in amin..=amax {
            for b in bmin..=bmax {
                let v = iform.eval(a, b);
                if v.is_negative() || v > target_cap {
                    continue;
                }
                let (q, r) = v.div_rem(&iform.scale);
                if r.is_zero() {
                    if let Some(n) = q.to_u64() {
                        if n <= bound {
                            counts[n as usize] += 1;
                        }
                    }
                }
            }
        }
        counts
    }

    /// Integer box guaranteed to contain {q(a+s,b+t) <= bound}, from the
    /// eigenvalue bound lambda_min >= det / (q11 + q22).
    fn sweep_box(&self, bound: u64) -> (i64, i64, i64, i64) {
        let four = BigRational::from(BigInt::from(4));
        let det2 = (&self.q11 * &self.q22 - &self.q12 * &self.q12 / &four).to_f64().unwrap();
        let tr = (&self.q11 + &self.q22).to_f64().unwrap();
        let lam_min = det2 / tr;
        let r = ((bound as f64) / lam_min).sqrt() + 2.0;
        let s = self.shift.0.to_f64().unwrap();
        let t = self.shift.1.to_f64().unwrap();
        (
            (-s - r).floor() as i64,
            (-s + r).ceil() as i64,
            (-t - r).floor() as i64,
            (-t + r).ceil() as i64,
        )
    }

    /// Denominator-free version: scale * q(a+s, b+t) as an integer
    /// polynomial in (a, b).
    fn integerized(&self) -> IntForm {
        let two = BigRational::from(BigInt::from(2));
        let (s, t) = (&self.shift.0, &self.shift.1);
        let ca2 = self.q11.clone();
        let cab = self.q12.clone();
        let cb2 = self.q22.clone();
        let ca = &two * &self.q11 * s + &self.q12 * t;
        let cb = &self.q12 * s + &two * &self.q22 * t;
        let c0 = &self.q11 * s * s + &self.q12 * s * t + &self.q22 * t * t;
        let all = [&ca2, &cab, &cb2, &ca, &cb, &c0];
        let mut scale = BigInt::one();
        for c in all {
            scale = scale.lcm(c.denom());
        }
        let s_rat = BigRational::from(scale.clone());
        IntForm {
            a2: (&ca2 * &s_rat).to_integer(),
            ab: (&cab * &s_rat).to_integer(),
            b2: (&cb2 * &s_rat).to_integer(),
            a1: (&ca * &s_rat).to_integer(),
            b1: (&cb * &s_rat).to_integer(),
            c0: (&c0 * &s_rat).to_integer(),
            scale,
        }
    }
}

struct IntForm {
    a2: BigInt,
    ab: BigInt,
    b2: BigInt,
    a1: BigInt,
    b1: BigInt,
    c0: BigInt,
    scale: BigInt,
}

impl IntForm {
    fn eval(&self, a: i64, b: i64) -> BigInt {
        let a = BigInt::from(a);
        let b = BigInt::from(b);
        &self.a2 * &a * &a + &self.ab * &a * &b + &self.b2 * &b * &b
            + &self.a1 * &a
            + &self.b1 * &b
            + &self.c0
    }
}

trait FractFloor {
    fn fract_floor(&self) -> BigRational;
}

impl FractFloor for BigRational {
    fn fract_floor(&self) -> BigRational {
        self - self.floor()
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Serialized shape of a lattice: {schema, D, zbasis, gram}, all rationals
/// as "p/q" strings, basis vectors flattened in the {1, delta} coordinates.
#[derive(Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub schema: String,
    #[serde(rename = "D")]
    pub d: u64,
    pub zbasis: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
    pub integral: bool,
    pub dual_of_integral: bool,
}

impl LatticeJson {
    pub fn of(lat: &HermLattice) -> LatticeJson {
        LatticeJson {
            schema: "picard-cycles/lattice/v1".into(),
            d: lat.ctx().d(),
            zbasis: lat
                .basis()
                .iter()
                .map(|v| flatten(v).iter().map(crate::serial::rat_to_string).collect())
                .collect(),
            gram: lat
                .gram()
                .iter()
                .map(|row| row.iter().map(crate::serial::rat_to_string).collect())
                .collect(),
            integral: lat.is_integral(),
            dual_of_integral: lat.is_dual_of_integral(),
        }
    }

    pub fn parse(&self) -> Result<HermLattice> {
        let ctx = FieldCtx::new(self.d as i64)?;
        let mut basis = Vec::new();
        for row in &self.zbasis {
            if row.len() != 6 {
                return Err(Error::Config("zbasis rows must have 6 entries".into()));
            }
            let coords: Vec<BigRational> = row
                .iter()
                .map(|s| crate::serial::rat_from_str(s).map_err(Error::Config))
                .collect::<Result<_>>()?;
            basis.push(unflatten(&coords));
        }
        HermLattice::from_zbasis(ctx, basis)
    }
}

/// Canonical basis vectors of K^3.
pub fn standard_vector(i: usize) -> Vec3 {
    let mut e = [Kq::zero(), Kq::zero(), Kq::zero()];
    e[i] = Kq::one();
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn standard_pairing_matches_j() {
        let ctx = FieldCtx::new(7).unwrap();
        let l = HermLattice::standard(&ctx);
        let e1 = standard_vector(0);
        let e2 = standard_vector(1);
        let e3 = standard_vector(2);
        assert_eq!(herm_pairing(&ctx, &e2, &e2), Kq::one());
        // (e1, e3) = 1/delta = -delta/7
        assert_eq!(
            herm_pairing(&ctx, &e1, &e3),
            Kq::new(BigRational::zero(), q(-1, 7))
        );
        assert_eq!(herm_pairing(&ctx, &e1, &e1), Kq::zero());
        assert!(l.contains(&e2));
    }

    #[test]
    fn biduality() {
        for &d in &[3i64, 7] {
            let ctx = FieldCtx::new(d).unwrap();
            let l = HermLattice::standard(&ctx);
            let dd = l.dual().unwrap().dual().unwrap();
            assert!(l.same_span(&dd));
        }
    }

    #[test]
    fn e2_in_dual() {
        let ctx = FieldCtx::new(7).unwrap();
        let l = HermLattice::standard(&ctx);
        let dual = l.dual().unwrap();
        assert!(dual.contains(&standard_vector(1)));
    }

    /// Smith normal form diagonal of an integer matrix (test oracle).
    fn snf_diagonal(m: &Vec<Vec<BigInt>>) -> Vec<BigInt> {
        let mut m = m.clone();
        let rows = m.len();
        let cols = m[0].len();
        let n = rows.min(cols);
        let mut diag = Vec::new();
        for t in 0..n {
            loop {
                let mut min: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        if !m[i][j].is_zero()
                            && min
                                .map(|(a, b): (usize, usize)| m[i][j].abs() < m[a][b].abs())
                                .unwrap_or(true)
                        {
                            min = Some((i, j));
                        }
                    }
                }
                let (pi, pj) = match min {
                    Some(x) => x,
                    None => break,
                };
                m.swap(t, pi);
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                let mut clean = true;
                let pivot = m[t][t].clone();
                for i in (t + 1)..rows {
                    if !m[i][t].is_zero() {
                        let f = &m[i][t] / &pivot;
                        for j in t..cols {
                            let s = &f * &m[t][j];
                            m[i][j] -= s;
                        }
                        if !m[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in (t + 1)..cols {
                    if !m[t][j].is_zero() {
                        let f = &m[t][j] / &pivot;
                        for i in t..rows {
                            let s = &f * &m[i][t];
                            m[i][j] -= s;
                        }
                        if !m[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            if m[t][t].is_zero() {
                break;
            }
            diag.push(m[t][t].abs());
        }
        diag
    }

    #[test]
    fn index_in_dual_matches_snf_oracle() {
        let ctx = FieldCtx::new(3).unwrap();
        let l = HermLattice::standard(&ctx);
        let dual = l.dual().unwrap();
        // coordinates of L's basis in the dual's basis are integral
        let mut coord_rows = Vec::new();
        for b in l.basis() {
            let c = dual.coords(b);
            assert!(c.iter().all(|x| x.is_integer()));
            coord_rows.push(c.iter().map(|x| x.to_integer()).collect::<Vec<_>>());
        }
        let diag = snf_diagonal(&coord_rows);
        let index: BigInt = diag.iter().product();
        assert_eq!(BigRational::from(index), l.index_in_dual());
    }

    #[test]
    fn rank_one_norm_forms() {
        let ctx7 = FieldCtx::new(7).unwrap();
        let l7 = HermLattice::standard(&ctx7);
        let f = l7.rank_one(&standard_vector(1), None).unwrap();
        // the norm form of O_K for D=7 is a^2 + ab + 2b^2, up to GL2(Z)
        assert_eq!(f.value(1, 0) * f.value(0, 1), q(2, 1));
        assert_eq!(f.count_norm(1), 2);
        assert_eq!(f.count_norm(2), 4);
        assert_eq!(f.count_norm(0), 1);
        assert_eq!(f.disc_lat, q(1, 1));
        assert_eq!(f.disc_dual, q(1, 7));

        let ctx3 = FieldCtx::new(3).unwrap();
        let l3 = HermLattice::standard(&ctx3);
        let f3 = l3.rank_one(&standard_vector(1), None).unwrap();
        assert_eq!(f3.count_norm(1), 6);
        assert_eq!(f3.value(1, 0) * f3.value(0, 1), q(1, 1));

        assert!(matches!(
            l7.rank_one(&standard_vector(0), None),
            Err(Error::IsotropicVector)
        ));
    }

    #[test]
    fn count_matches_bruteforce() {
        let ctx = FieldCtx::new(7).unwrap();
        let l = HermLattice::standard(&ctx);
        let f = l.rank_one(&standard_vector(1), None).unwrap();
        let x = 500u64;
        let counts = f.count_norm_upto(x);
        // oracle: direct 2-d enumeration over a big square box
        let mut oracle = vec![0u64; x as usize + 1];
        let r = 60i64;
        for a in -r..=r {
            for b in -r..=r {
                let v = f.value(a, b);
                if v.is_integer() {
                    if let Some(n) = v.to_integer().to_u64() {
                        if n <= x {
                            oracle[n as usize] += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(counts, oracle);
    }

    #[test]
    fn coset_shift_validation() {
        let ctx = FieldCtx::new(7).unwrap();
        let l = HermLattice::standard(&ctx);
        // e2/7 is not in the dual; delta*e2/7 is (trace pairing lands in Z)
        let e2 = standard_vector(1);
        let bad = scalar_mul(&Kq::new(q(1, 7), q(0, 1)), &e2, 7);
        assert!(CosetLattice::new(l.clone(), bad).is_err());
        let good = scalar_mul(&Kq::new(q(0, 1), q(1, 7)), &e2, 7);
        let coset = CosetLattice::new(l.clone(), good).unwrap();
        let f = coset.rank_one(&e2).unwrap();
        assert!(f.has_shift());
        // a shifted coset misses the zero vector
        assert_eq!(f.count_norm(0), 0);
        let counts = f.count_norm_upto(100);
        let mut oracle = vec![0u64; 101];
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                let v = f.value(a, b);
                if v.is_integer() {
                    if let Some(n) = v.to_integer().to_u64() {
                        if n <= 100 {
                            oracle[n as usize] += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(counts, oracle);
    }

    #[test]
    fn lattice_json_roundtrip() {
        let ctx = FieldCtx::new(7).unwrap();
        let l = HermLattice::standard(&ctx);
        let js = LatticeJson::of(&l);
        assert!(js.integral);
        let text = serde_json::to_string(&js).unwrap();
        let back: LatticeJson = serde_json::from_str(&text).unwrap();
        let l2 = back.parse().unwrap();
        assert!(l.same_span(&l2));
        assert_eq!(l.gram(), l2.gram());
    }
}
