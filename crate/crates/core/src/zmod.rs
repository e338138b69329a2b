//! Arithmetic mod p^M with explicit precision, and dense matrices over it.
//!
//! Representatives live in [0, p^M). Values are `BigUint` so that no
//! intermediate product can overflow regardless of p and M.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring Z/p^M.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZMod {
    pub p: u64,
    pub prec: u32,
    #[serde(skip, default)]
    modulus: std::cell::OnceCell<BigUint>,
}

impl PartialEq for ZMod {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.prec == other.prec
    }
}

impl Eq for ZMod {}

impl ZMod {
    pub fn new(p: u64, prec: u32) -> Self {
        ZMod { p, prec, modulus: std::cell::OnceCell::new() }
    }

    pub fn modulus(&self) -> &BigUint {
        self.modulus.get_or_init(|| BigUint::from(self.p).pow(self.prec))
    }

    pub fn reduce_uint(&self, x: &BigUint) -> BigUint {
        x % self.modulus()
    }

    pub fn reduce_int(&self, x: &BigInt) -> BigUint {
        let m = BigInt::from(self.modulus().clone());
        let r = ((x % &m) + &m) % &m;
        r.to_biguint().expect("non-negative after reduction")
    }

    /// Image of an exact rational; the denominator must be a unit.
    pub fn reduce_rat(&self, x: &BigRational) -> Result<BigUint> {
        let num = self.reduce_int(x.numer());
        let den = self.reduce_int(x.denom());
        let dinv = self.inv(&den)?;
        Ok(self.mul(&num, &dinv))
    }

    pub fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % self.modulus()
    }

    pub fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let m = self.modulus();
        ((a % m) + m - (b % m)) % m
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        let m = self.modulus();
        (m - (a % m)) % m
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % self.modulus()
    }

    pub fn pow_u64(&self, a: &BigUint, e: u64) -> BigUint {
        a.modpow(&BigUint::from(e), self.modulus())
    }

    pub fn is_unit(&self, a: &BigUint) -> bool {
        !(a % BigUint::from(self.p)).is_zero()
    }

    /// Inverse of a unit, by lifting the mod-p inverse with Newton steps.
    pub fn inv(&self, a: &BigUint) -> Result<BigUint> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        // Fermat inverse mod p, then Hensel: x -> x(2 - ax)
        let p = BigUint::from(self.p);
        let mut x = a.modpow(&(&p - 2u32), &p);
        let mut prec = 1u32;
        while prec < self.prec {
            prec = (prec * 2).min(self.prec);
            let m = BigUint::from(self.p).pow(prec);
            let ax = (a * &x) % &m;
            let two = BigUint::from(2u32) % &m;
            let t = ((&two + &m - ax) % &m) * &x % &m;
            x = t;
        }
        Ok(x % self.modulus())
    }

    /// p-adic valuation of x (capped at the precision) and its unit part.
    pub fn valuation(&self, x: &BigUint) -> (u32, BigUint) {
        if x.is_zero() {
            return (self.prec, BigUint::zero());
        }
        let p = BigUint::from(self.p);
        let mut v = 0u32;
        let mut u = x.clone();
        while v < self.prec && (&u % &p).is_zero() {
            u /= &p;
            v += 1;
        }
        (v, u)
    }
}

/// Dense square or rectangular matrix over Z/p^M, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZModMatrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "crate::serial::biguint_vec")]
    pub entries: Vec<BigUint>,
}

impl ZModMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZModMatrix { rows, cols, entries: vec![BigUint::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigUint>>) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        ZModMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, zn: &ZMod, other: &ZModMatrix) -> ZModMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ZModMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.at(k, j);
                    out.entries[i * other.cols + j] += t;
                }
            }
        }
        for e in &mut out.entries {
            *e = zn.reduce_uint(e);
        }
        out
    }

    pub fn matvec(&self, zn: &ZMod, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigUint::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                zn.reduce_uint(&acc)
            })
            .collect()
    }

    pub fn pow(&self, zn: &ZMod, e: u64) -> ZModMatrix {
        assert_eq!(self.rows, self.cols);
        let mut result = ZModMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(zn, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(zn, &base);
            }
        }
        result
    }

    pub fn scale(&self, zn: &ZMod, c: &BigUint) -> ZModMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = zn.mul(e, c);
        }
        out
    }

    pub fn add(&self, zn: &ZMod, other: &ZModMatrix) -> ZModMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e = zn.add(e, o);
        }
        out
    }

    pub fn transpose(&self) -> ZModMatrix {
        let mut out = ZModMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan over Z/p^M; pivots must be units.
    pub fn inverse(&self, zn: &ZMod) -> Result<ZModMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = ZModMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| zn.is_unit(m.at(r, col)))
                .ok_or(Error::NotAUnit)?;
            for j in 0..n {
                let t = m.at(col, j).clone();
                m.set(col, j, m.at(pivot, j).clone());
                m.set(pivot, j, t);
                let t = inv.at(col, j).clone();
                inv.set(col, j, inv.at(pivot, j).clone());
                inv.set(pivot, j, t);
            }
            let pinv = zn.inv(m.at(col, col))?;
            for j in 0..n {
                m.set(col, j, zn.mul(m.at(col, j), &pinv));
                inv.set(col, j, zn.mul(inv.at(col, j), &pinv));
            }
            for r in 0..n {
                if r != col && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for j in 0..n {
                        let t = zn.sub(m.at(r, j), &zn.mul(&f, m.at(col, j)));
                        m.set(r, j, t);
                        let t = zn.sub(inv.at(r, j), &zn.mul(&f, inv.at(col, j)));
                        inv.set(r, j, t);
                    }
                }
            }
        }
        Ok(inv)
    }
}
