#![allow(dead_code)] // each test binary uses its own slice of this module

//! Independent oracles for the integration suites.
//!
//! Everything here deliberately avoids the production code paths: the
//! polynomial oracle is a bare integer hash map with schoolbook arithmetic,
//! and the rank oracle enumerates minors. They exist to pin expected values
//! from a second route.

use std::collections::HashMap;

use det3cert::linalg::Matrix;
use det3cert::scalar::Scalar;
use det3cert::{Exponent9, Form};
use num_traits::Zero;

/// Naive dense-exponent integer polynomial in x1..x9.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaivePoly {
    pub terms: HashMap<[u8; 9], i64>,
}

impl NaivePoly {
    pub fn zero() -> Self {
        NaivePoly {
            terms: HashMap::new(),
        }
    }

    pub fn constant(c: i64) -> Self {
        let mut p = NaivePoly::zero();
        if c != 0 {
            p.terms.insert([0; 9], c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u8; 9];
        e[i - 1] = 1;
        let mut p = NaivePoly::zero();
        p.terms.insert(e, 1);
        p
    }

    pub fn add(&self, other: &NaivePoly) -> NaivePoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(*e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> NaivePoly {
        NaivePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &NaivePoly) -> NaivePoly {
        let mut out = NaivePoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..9 {
                    e[i] += eb[i];
                }
                let entry = out.terms.entry(e).or_insert(0);
                *entry += ca * cb;
                if *entry == 0 {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    /// Schoolbook 3x3 determinant of a matrix of polynomials.
    pub fn det3_of(entries: &[[NaivePoly; 3]; 3]) -> NaivePoly {
        let perms: [(i64, [usize; 3]); 6] = [
            (1, [0, 1, 2]),
            (1, [1, 2, 0]),
            (1, [2, 0, 1]),
            (-1, [0, 2, 1]),
            (-1, [1, 0, 2]),
            (-1, [2, 1, 0]),
        ];
        let mut acc = NaivePoly::zero();
        for (sign, perm) in perms {
            let prod = entries[0][perm[0]]
                .mul(&entries[1][perm[1]])
                .mul(&entries[2][perm[2]])
                .mul(&NaivePoly::constant(sign));
            acc = acc.add(&prod);
        }
        acc
    }

    /// Compare against a production [`Form`] coefficient by coefficient.
    pub fn matches_form(&self, f: &Form) -> bool {
        if self.terms.len() != f.term_count() {
            return false;
        }
        self.terms.iter().all(|(e, c)| {
            f.coeff(&Exponent9::new(*e)) == det3cert::scalar::scalar(*c)
        })
    }
}

/// The generic traceless determinant expanded by the oracle.
pub fn oracle_traceless_det() -> NaivePoly {
    let x = NaivePoly::var;
    let corner = x(1).neg().add(&x(5).neg());
    let entries = [
        [x(1), x(2), x(3)],
        [x(4), x(5), x(6)],
        [x(7), x(8), corner],
    ];
    NaivePoly::det3_of(&entries)
}

fn submatrix_det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    // Laplace expansion along the first listed row.
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut acc = Scalar::zero();
    let rest: Vec<usize> = rows[1..].to_vec();
    for (j, &c) in cols.iter().enumerate() {
        let pivot = m.get(rows[0], c);
        if pivot.is_zero() {
            continue;
        }
        let remaining: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(jj, _)| *jj != j)
            .map(|(_, &cc)| cc)
            .collect();
        let minor = submatrix_det(m, &rest, &remaining);
        let signed = if j % 2 == 0 { minor } else { -minor };
        acc += pivot * signed;
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Rank as the size of the largest nonvanishing minor; only sane for tiny
/// matrices.
pub fn minor_rank(m: &Matrix) -> usize {
    let max = m.rows().min(m.cols());
    for size in (1..=max).rev() {
        for rows in combinations(m.rows(), size) {
            for cols in combinations(m.cols(), size) {
                if !submatrix_det(m, &rows, &cols).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}
