//! Small dense matrices: determinants over a field and cofactor expansions
//! over polynomial entries.

use crate::coeffs::{Field, Ring};
use crate::error::Result;
use crate::poly::MPoly;

/// Determinant over a field by elimination.
pub fn det_field<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let p = match (c..n).find(|&r| !field.is_zero(&a[r][c])) {
            Some(p) => p,
            None => return field.zero(),
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("pivot is nonzero");
        for r in c + 1..n {
            if field.is_zero(&a[r][c]) {
                continue;
            }
            let f = field.mul(&a[r][c], &inv);
            for k in c..n {
                let t = field.mul(&f, &a[c][k]);
                a[r][k] = field.sub(&a[r][k], &t);
            }
        }
    }
    det
}

fn minor_matrix<T: Clone>(m: &[Vec<T>], skip_r: usize, skip_c: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_r)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != skip_c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Determinant of a polynomial matrix by Laplace expansion along the first row.
pub fn det_poly<R: Ring>(m: &[Vec<MPoly<R>>]) -> Result<MPoly<R>> {
    let n = m.len();
    match n {
        0 => unreachable!("empty matrix"),
        1 => return Ok(m[0][0].clone()),
        2 => return Ok(&m[0][0].checked_mul(&m[1][1])? - &m[0][1].checked_mul(&m[1][0])?),
        _ => {}
    }
    let mut acc = MPoly::zero(m[0][0].ring(), m[0][0].universe());
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let t = m[0][c].checked_mul(&det_poly(&minor_matrix(m, 0, c))?)?;
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    Ok(acc)
}

/// Adjugate (transposed cofactor matrix), so that `adj(m)·m = det(m)·1`.
pub fn adjugate_poly<R: Ring>(m: &[Vec<MPoly<R>>]) -> Result<Vec<Vec<MPoly<R>>>> {
    let n = m.len();
    let ring = m[0][0].ring();
    let u = m[0][0].universe();
    if n == 1 {
        return Ok(vec![vec![MPoly::one(ring, u)]]);
    }
    let mut out = vec![vec![MPoly::zero(ring, u); n]; n];
    for r in 0..n {
        for c in 0..n {
            let d = det_poly(&minor_matrix(m, r, c))?;
            out[c][r] = if (r + c) % 2 == 0 { d } else { -&d };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::PrimeField;
    use crate::poly::{parse_poly, VarUniverse};

    #[test]
    fn field_determinants() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(det_field(&k, &[vec![1, 2], vec![3, 4]]), 5);
        assert_eq!(det_field(&k, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), 6);
        assert_eq!(det_field(&k, &[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn adjugate_identity() {
        let k = PrimeField::new(101).unwrap();
        let u = VarUniverse::new(["a", "b", "c", "pi"]).unwrap();
        let p = |s: &str| parse_poly(&k, &u, s).unwrap();
        let m = vec![
            vec![p("a"), p("pi*b"), p("1")],
            vec![p("2"), p("pi"), p("c")],
            vec![p("b"), p("0"), p("pi^2")],
        ];
        let adj = adjugate_poly(&m).unwrap();
        let det = det_poly(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = MPoly::zero(&k, &u);
                for t in 0..3 {
                    s = &s + &(&adj[i][t] * &m[t][j]);
                }
                let want = if i == j { det.clone() } else { MPoly::zero(&k, &u) };
                assert_eq!(s, want);
            }
        }
    }
}
