//! Square matrices over `Z/p^k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::{add_mod, inv_mod, mul_mod, sub_mod, ResidueInt, RingParams};

/// An `n x n` matrix over `Z/p^k`, stored densely in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct MatrixZ {
    params: RingParams,
    entries: Vec<u64>,
}

/// Wire form: `{"p":int, "k":int, "n":int, "rows":[[int,...],...]}`.
#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    p: u64,
    k: u32,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl TryFrom<MatrixJson> for MatrixZ {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let params = RingParams::new(raw.p, raw.n, raw.k)?;
        if raw.rows.len() != raw.n || raw.rows.iter().any(|r| r.len() != raw.n) {
            return Err(Error::Parse(format!("matrix rows are not {0}x{0}", raw.n)));
        }
        let entries: Vec<u64> = raw.rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|&&e| e >= params.modulus()) {
            return Err(Error::Parse(format!(
                "entry {bad} outside [0, {})",
                params.modulus()
            )));
        }
        Ok(MatrixZ { params, entries })
    }
}

impl From<MatrixZ> for MatrixJson {
    fn from(m: MatrixZ) -> Self {
        MatrixJson {
            p: m.params.p(),
            k: m.params.k(),
            n: m.params.n(),
            rows: m.rows(),
        }
    }
}

impl MatrixZ {
    /// Builds a matrix from integer rows, reducing every entry.
    pub fn from_rows<R: AsRef<[i64]>>(params: RingParams, rows: &[R]) -> Result<Self> {
        let n = params.n();
        if rows.len() != n || rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::DimensionMismatch(format!("expected {n}x{n} rows")));
        }
        let m = params.modulus();
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter())
            .map(|&v| ResidueInt::new(v as i128, m).value())
            .collect();
        Ok(MatrixZ { params, entries })
    }

    pub fn from_fn(params: RingParams, mut f: impl FnMut(usize, usize) -> i128) -> Self {
        let n = params.n();
        let m = params.modulus();
        let entries = (0..n * n)
            .map(|idx| ResidueInt::new(f(idx / n, idx % n), m).value())
            .collect();
        MatrixZ { params, entries }
    }

    pub(crate) fn from_raw(params: RingParams, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), params.n() * params.n());
        debug_assert!(entries.iter().all(|&e| e < params.modulus()));
        MatrixZ { params, entries }
    }

    pub fn identity(params: RingParams) -> Self {
        MatrixZ::from_fn(params, |i, j| (i == j) as i128)
    }

    pub fn zero(params: RingParams) -> Self {
        MatrixZ::from_fn(params, |_, _| 0)
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn modulus(&self) -> u64 {
        self.params.modulus()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n() + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> ResidueInt {
        ResidueInt::new(self.get(i, j) as i128, self.modulus())
    }

    /// Raw row-major entries, each in `[0, p^k)`.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.n()).map(<[u64]>::to_vec).collect()
    }

    fn check_same(&self, other: &MatrixZ) -> Result<()> {
        if self.params != other.params {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.params, other.params
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatrixZ) -> Result<MatrixZ> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &MatrixZ) -> MatrixZ {
        let n = self.n();
        let m = self.modulus() as u128;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for l in 0..n {
                    acc += self.entries[i * n + l] as u128 * other.entries[l * n + j] as u128 % m;
                }
                entries[i * n + j] = (acc % m) as u64;
            }
        }
        MatrixZ {
            params: self.params,
            entries,
        }
    }

    pub fn add(&self, other: &MatrixZ) -> Result<MatrixZ> {
        self.check_same(other)?;
        let m = self.modulus();
        Ok(self.zip_with(other, |a, b| add_mod(a, b, m)))
    }

    pub fn sub(&self, other: &MatrixZ) -> Result<MatrixZ> {
        self.check_same(other)?;
        let m = self.modulus();
        Ok(self.zip_with(other, |a, b| sub_mod(a, b, m)))
    }

    fn zip_with(&self, other: &MatrixZ, f: impl Fn(u64, u64) -> u64) -> MatrixZ {
        MatrixZ {
            params: self.params,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: i128) -> MatrixZ {
        let m = self.modulus();
        let c = ResidueInt::new(c, m).value();
        MatrixZ {
            params: self.params,
            entries: self.entries.iter().map(|&a| mul_mod(a, c, m)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> MatrixZ {
        let mut acc = MatrixZ::identity(self.params);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n();
        self.entries
            .iter()
            .enumerate()
            .all(|(idx, &e)| e == (idx / n == idx % n) as u64)
    }

    /// Determinant by elimination over the local ring `Z/p^k`: each step
    /// pivots on an entry of minimal `p`-adic valuation in its column, so
    /// every other entry of the column is an exact multiple of the pivot.
    pub fn det(&self) -> ResidueInt {
        let n = self.n();
        let m = self.modulus();
        let p = self.params.p();
        let mut a = self.entries.clone();
        let mut det: u64 = 1 % m;
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| a[r * n + col] != 0)
                .min_by_key(|&r| valuation(a[r * n + col], p));
            let Some(pivot) = pivot else {
                return ResidueInt::zero(m);
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = sub_mod(0, det, m);
            }
            let piv = a[col * n + col];
            let v = valuation(piv, p);
            let scale = p.pow(v);
            let unit_inv = inv_mod(piv / scale, m).expect("pivot part is a unit");
            det = mul_mod(det, piv, m);
            for r in col + 1..n {
                let e = a[r * n + col];
                if e == 0 {
                    continue;
                }
                // e = p^v * w exactly, since valuation(e) >= v.
                let factor = mul_mod(e / scale, unit_inv, m);
                for c in col..n {
                    let sub = mul_mod(factor, a[col * n + c], m);
                    a[r * n + c] = sub_mod(a[r * n + c], sub, m);
                }
            }
        }
        ResidueInt::new(det as i128, m)
    }

    /// Invertible over `Z/p^k` iff the determinant is a unit, i.e. iff the
    /// reduction mod `p` is invertible.
    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Inverts mod `p` by Gauss-Jordan, then lifts through `k - 1` Newton
    /// steps `X <- X(2I - AX)`.
    pub fn inverse(&self) -> Result<MatrixZ> {
        let p = self.params.p();
        let base = self.reduce_modulus(1)?;
        let inv_p = gauss_jordan_inverse(&base.entries, self.n(), p).ok_or(Error::NotInvertible)?;
        let mut x = MatrixZ {
            params: self.params,
            entries: inv_p,
        };
        let two = MatrixZ::identity(self.params).scale(2);
        for _ in 1..self.params.k() {
            let ax = self.mul_unchecked(&x);
            x = x.mul_unchecked(&two.sub(&ax)?);
        }
        debug_assert!(self.mul_unchecked(&x).is_identity());
        Ok(x)
    }

    /// Entrywise reduction to `Z/p^target`. Covers reduction to the residue
    /// field (`target = 1`) and to `Z/p^2`.
    pub fn reduce_modulus(&self, target: u32) -> Result<MatrixZ> {
        let k = self.params.k();
        if target == 0 || target > k {
            return Err(Error::BadTarget { target, k });
        }
        let params = self.params.with_k(target)?;
        let m = params.modulus();
        Ok(MatrixZ {
            params,
            entries: self.entries.iter().map(|&e| e % m).collect(),
        })
    }

    /// Reinterprets the entries (representatives in `[0, p^k)`) modulo a
    /// larger power `p^target`.
    pub fn lift_entries(&self, target: u32) -> Result<MatrixZ> {
        let k = self.params.k();
        if target < k {
            return Err(Error::BadTarget { target, k });
        }
        Ok(MatrixZ {
            params: self.params.with_k(target)?,
            entries: self.entries.clone(),
        })
    }

    /// Membership in the kernel subgroup `1 + J(R)`: `A = I (mod p)`.
    pub fn in_kernel_subgroup(&self) -> bool {
        let n = self.n();
        let p = self.params.p();
        self.entries
            .iter()
            .enumerate()
            .all(|(idx, &e)| (e + p - (idx / n == idx % n) as u64).is_multiple_of(p))
    }

    /// `A -> diag(A, I)` of size `n_target`.
    pub fn block_embed(&self, n_target: usize) -> Result<MatrixZ> {
        let m = self.n();
        if m > n_target {
            return Err(Error::SizeError { m, n: n_target });
        }
        let params = self
            .params
            .with_n(n_target)
            .map_err(|_| Error::SizeError { m, n: n_target })?;
        Ok(MatrixZ::from_fn(params, |i, j| {
            if i < m && j < m {
                self.get(i, j) as i128
            } else {
                (i == j) as i128
            }
        }))
    }

    /// Whether `a_ij - delta_ij` is divisible by `p` whenever `i >= m` or
    /// `j >= m` (0-based). Returns the first offending entry.
    pub fn h_prime_violation(&self, m: usize) -> Option<(usize, usize)> {
        let n = self.n();
        let p = self.params.p();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i >= m || j >= m)
            .find(|&(i, j)| !(self.get(i, j) + p - (i == j) as u64).is_multiple_of(p))
    }

    /// The top-left `m x m` corner of an element of `H'`. A homomorphism on
    /// `H'` only because products of off-block entries vanish mod `p^2`, so
    /// the ring must have `k <= 2`.
    pub fn corner_project(&self, m: usize) -> Result<MatrixZ> {
        let n = self.n();
        if m == 0 || m > n {
            return Err(Error::SizeError { m, n });
        }
        if self.params.k() > 2 {
            return Err(Error::InvalidParams(format!(
                "corner projection needs k <= 2, got k = {}",
                self.params.k()
            )));
        }
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if let Some((row, col)) = self.h_prime_violation(m) {
            return Err(Error::NotInHPrime { row, col });
        }
        let params = self.params.with_n(m)?;
        Ok(MatrixZ::from_fn(params, |i, j| self.get(i, j) as i128))
    }
}

fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Gauss-Jordan inverse over the prime field `F_p`.
pub(crate) fn gauss_jordan_inverse(a: &[u64], n: usize, p: u64) -> Option<Vec<u64>> {
    let w = 2 * n;
    let mut aug = vec![0u64; n * w];
    for i in 0..n {
        for j in 0..n {
            aug[i * w + j] = a[i * n + j] % p;
        }
        aug[i * w + n + i] = 1 % p;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r * w + col] != 0)?;
        if pivot != col {
            for c in 0..w {
                aug.swap(pivot * w + c, col * w + c);
            }
        }
        let inv = inv_mod(aug[col * w + col], p)?;
        for c in 0..w {
            aug[col * w + c] = mul_mod(aug[col * w + c], inv, p);
        }
        for r in 0..n {
            if r == col || aug[r * w + col] == 0 {
                continue;
            }
            let f = aug[r * w + col];
            for c in 0..w {
                let sub = mul_mod(f, aug[col * w + c], p);
                aug[r * w + c] = sub_mod(aug[r * w + c], sub, p);
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|i| aug[i * w + n..i * w + w].to_vec())
            .collect(),
    )
}

impl fmt::Display for MatrixZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}] mod {}", rows.join(","), self.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: usize, k: u32) -> RingParams {
        RingParams::new(p, n, k).unwrap()
    }

    fn mat(p: u64, k: u32, rows: &[&[i64]]) -> MatrixZ {
        MatrixZ::from_rows(params(p, rows.len(), k), rows).unwrap()
    }

    fn alpha_bar(a: i64, k: u32) -> MatrixZ {
        mat(2, k, &[&[1, a, -a - 1], &[0, -1, 0], &[0, 0, -1]])
    }

    fn beta(k: u32) -> MatrixZ {
        mat(2, k, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
    }

    #[test]
    fn products() {
        let alpha = mat(2, 1, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            alpha.mul(&beta(1)).unwrap(),
            mat(2, 1, &[&[1, 0, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        let ab = alpha_bar(1, 2);
        assert_eq!(ab.rows(), vec![vec![1, 1, 2], vec![0, 3, 0], vec![0, 0, 3]]);
        assert!(ab.mul(&ab).unwrap().is_identity());
        let a = MatrixZ::from_fn(params(2, 3, 2), |i, j| (i * 3 + j) as i128);
        assert_eq!(MatrixZ::identity(params(2, 3, 2)).mul(&a).unwrap(), a);
        assert!(a.mul(&alpha).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(MatrixZ::identity(params(3, 4, 2)).det().value(), 1);
        assert_eq!(beta(1).det().value(), 1);
        assert_eq!(mat(2, 2, &[&[2, 0], &[0, 1]]).det().value(), 2);
        assert_eq!(mat(3, 2, &[&[3, 1], &[6, 4]]).det().value(), 6);
        // Pivoting must prefer the unit in the column.
        assert_eq!(mat(2, 3, &[&[2, 1], &[1, 0]]).det().value(), 7);
    }

    #[test]
    fn invertibility() {
        assert!(MatrixZ::identity(params(2, 3, 3)).is_invertible());
        assert!(!MatrixZ::zero(params(2, 3, 3)).is_invertible());
        assert!(!mat(2, 2, &[&[1, 1], &[1, 1]]).is_invertible());
        assert!(matches!(
            mat(2, 2, &[&[1, 1], &[1, 1]]).inverse(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn inverses() {
        let ab = alpha_bar(1, 2);
        assert_eq!(ab.inverse().unwrap(), ab);
        for k in 1..8 {
            let b = beta(k);
            assert_eq!(b.inverse().unwrap(), b.mul(&b).unwrap());
        }
        let id = MatrixZ::identity(params(5, 3, 3));
        assert_eq!(id.inverse().unwrap(), id);
        let a = mat(3, 4, &[&[4, 7], &[2, 6]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn reductions() {
        let a = alpha_bar(5, 3);
        assert_eq!(
            a.reduce_modulus(1).unwrap(),
            mat(2, 1, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        assert_eq!(a.reduce_modulus(3).unwrap(), a);
        assert_eq!(
            mat(2, 3, &[&[5]]).reduce_modulus(2).unwrap(),
            mat(2, 2, &[&[1]])
        );
        assert!(matches!(
            a.reduce_modulus(0),
            Err(Error::BadTarget { target: 0, k: 3 })
        ));
        assert!(matches!(a.reduce_modulus(4), Err(Error::BadTarget { .. })));
    }

    #[test]
    fn kernel_membership() {
        assert!(MatrixZ::identity(params(2, 3, 2)).in_kernel_subgroup());
        assert!(mat(2, 2, &[&[1, 2], &[0, 1]]).in_kernel_subgroup());
        assert!(!mat(2, 2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]).in_kernel_subgroup());
        assert!(mat(3, 2, &[&[4, 3], &[6, 7]]).in_kernel_subgroup());
    }

    #[test]
    fn block_maps() {
        let i2 = MatrixZ::identity(params(2, 2, 1));
        assert_eq!(
            i2.block_embed(3).unwrap(),
            MatrixZ::identity(params(2, 3, 1))
        );
        let swap = mat(2, 1, &[&[0, 1], &[1, 0]]);
        let big = swap.block_embed(4).unwrap();
        assert_eq!(
            big,
            mat(
                2,
                1,
                &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]
            )
        );
        assert_eq!(big.corner_project(2).unwrap(), swap);
        assert!(matches!(
            big.block_embed(3),
            Err(Error::SizeError { m: 4, n: 3 })
        ));
        let bad = mat(2, 2, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]]);
        assert!(matches!(
            bad.corner_project(2),
            Err(Error::NotInHPrime { row: 2, col: 0 })
        ));
        let deep = mat(2, 3, &[&[1, 0], &[0, 1]]);
        assert!(deep.corner_project(1).is_err());
    }

    #[test]
    fn json_format() {
        let a = alpha_bar(5, 3);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"p":2,"k":3,"n":3,"rows":[[1,5,2],[0,7,0],[0,0,7]]}"#
        );
        assert_eq!(serde_json::from_str::<MatrixZ>(&json).unwrap(), a);
        assert!(serde_json::from_str::<MatrixZ>(r#"{"p":2,"k":1,"n":1,"rows":[[2]]}"#).is_err());
        assert!(serde_json::from_str::<MatrixZ>(r#"{"p":2,"k":1,"n":2,"rows":[[1,0]]}"#).is_err());
    }
}
