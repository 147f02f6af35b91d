//! Weight multiplicities by the Freudenthal recursion.
//!
//! Independent of the module construction: it touches neither Gram matrices
//! nor action matrices, only the symmetrized form and root multiplicities
//! (obtained from the Peterson recursion), so it can serve as an oracle for
//! [`TruncatedModule`](super::TruncatedModule) dimensions.

use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::Result;
use crate::rational::Q;

/// Caches root and weight multiplicities for one `(A, lambda)`.
pub struct Freudenthal {
    rank: usize,
    /// `(alpha_i | alpha_j) = d_i a_ij`
    form: Vec<Vec<Q>>,
    d: Vec<Q>,
    lambda: Vec<i64>,
    peterson: HashMap<Vec<i64>, Q>,
    root_mult: HashMap<Vec<i64>, Q>,
    weight_mult: HashMap<Vec<i64>, Q>,
}

impl Freudenthal {
    pub fn new(a: &GeneralizedCartanMatrix, lambda: &[i64]) -> Result<Self> {
        let d = a.symmetrize()?;
        let n = a.rank();
        let form = (0..n)
            .map(|i| (0..n).map(|j| &d[i] * Q::from_integer(a.a(i, j).into())).collect())
            .collect();
        Ok(Freudenthal {
            rank: n,
            form,
            d,
            lambda: lambda.to_vec(),
            peterson: HashMap::new(),
            root_mult: HashMap::new(),
            weight_mult: HashMap::new(),
        })
    }

    fn ip(&self, x: &[i64], y: &[i64]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if y[j] != 0 {
                    acc += &self.form[i][j] * Q::from_integer((x[i] * y[j]).into());
                }
            }
        }
        acc
    }

    /// `(lambda | beta)` for `beta` in the root lattice.
    fn lambda_ip(&self, beta: &[i64]) -> Q {
        (0..self.rank).map(|i| &self.d[i] * Q::from_integer((beta[i] * self.lambda[i]).into())).sum()
    }

    /// `(rho | beta)`.
    fn rho_ip(&self, beta: &[i64]) -> Q {
        (0..self.rank).map(|i| &self.d[i] * Q::from_integer(beta[i].into())).sum()
    }

    /// Nonzero vectors `0 < x <= beta`, coordinatewise.
    fn below(beta: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &b in beta {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=b).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out.retain(|x| x.iter().any(|&c| c != 0));
        out
    }

    /// `c_beta = sum_{n | beta} mult(beta / n) / n`.
    fn peterson_c(&mut self, beta: &[i64]) -> Q {
        if let Some(c) = self.peterson.get(beta) {
            return c.clone();
        }
        let ht: i64 = beta.iter().sum();
        let c = if ht == 1 {
            Q::one()
        } else {
            let coef = self.ip(beta, beta) - Q::from_integer(2.into()) * self.rho_ip(beta);
            let mut rhs = Q::zero();
            for b1 in Self::below(beta) {
                if b1 == beta {
                    continue;
                }
                let b2: Vec<i64> = beta.iter().zip(&b1).map(|(x, y)| x - y).collect();
                let ip = self.ip(&b1, &b2);
                if ip.is_zero() {
                    continue;
                }
                let c1 = self.peterson_c(&b1);
                if c1.is_zero() {
                    continue;
                }
                let c2 = self.peterson_c(&b2);
                rhs += ip * c1 * c2;
            }
            if coef.is_zero() {
                // the left side vanishes only at simple roots and at non-roots
                // (real non-simple roots have (rho|beta) > (beta|beta)/2, imaginary
                // ones have (beta|beta) <= 0), so only proper divisors contribute
                let g = beta.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
                let mut c = Q::zero();
                for n in 2..=g {
                    if g % n == 0 {
                        let sub: Vec<i64> = beta.iter().map(|x| x / n).collect();
                        c += self.root_mult_q(&sub) / Q::from_integer(n.into());
                    }
                }
                c
            } else {
                rhs / coef
            }
        };
        self.peterson.insert(beta.to_vec(), c.clone());
        c
    }

    /// Root multiplicity of `beta` (zero for non-roots).
    pub fn root_multiplicity(&mut self, beta: &[i64]) -> i64 {
        self.root_mult_q(beta).to_i64().expect("integral multiplicity")
    }

    fn root_mult_q(&mut self, beta: &[i64]) -> Q {
        if let Some(m) = self.root_mult.get(beta) {
            return m.clone();
        }
        let mut m = self.peterson_c(beta);
        let g = beta.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        for n in 2..=g {
            if g % n == 0 {
                let sub: Vec<i64> = beta.iter().map(|x| x / n).collect();
                m -= self.root_mult_q(&sub) / Q::from_integer(n.into());
            }
        }
        assert!(m.is_integer() && !m.is_negative(), "bad root multiplicity {m} at {beta:?}");
        self.root_mult.insert(beta.to_vec(), m.clone());
        m
    }

    /// Multiplicity of `lambda - sum k_i alpha_i`.
    pub fn multiplicity(&mut self, k: &[i64]) -> u64 {
        self.mult_q(k).to_u64().expect("integral multiplicity")
    }

    fn mult_q(&mut self, beta: &[i64]) -> Q {
        if beta.iter().any(|&x| x < 0) {
            return Q::zero();
        }
        if beta.iter().all(|&x| x == 0) {
            return Q::one();
        }
        if let Some(m) = self.weight_mult.get(beta) {
            return m.clone();
        }
        let two = Q::from_integer(2.into());
        // |lambda + rho|^2 - |mu + rho|^2 for mu = lambda - beta
        let coef = &two * (self.lambda_ip(beta) + self.rho_ip(beta)) - self.ip(beta, beta);
        let m = if !coef.is_positive() {
            Q::zero()
        } else {
            let mut rhs = Q::zero();
            for alpha in Self::below(beta) {
                let ra = self.root_mult_q(&alpha);
                if ra.is_zero() {
                    continue;
                }
                let aa = self.ip(&alpha, &alpha);
                // (mu | alpha) = (lambda | alpha) - (beta | alpha)
                let mu_a = self.lambda_ip(&alpha) - self.ip(beta, &alpha);
                let mut j = 1i64;
                loop {
                    let rest: Vec<i64> = beta.iter().zip(&alpha).map(|(b, a)| b - j * a).collect();
                    if rest.iter().any(|&x| x < 0) {
                        break;
                    }
                    let mw = self.mult_q(&rest);
                    if !mw.is_zero() {
                        rhs += &ra * (&mu_a + Q::from_integer(j.into()) * &aa) * mw;
                    }
                    j += 1;
                }
            }
            two * rhs / coef
        };
        self.weight_mult.insert(beta.to_vec(), m.clone());
        m
    }
}

/// One-shot multiplicity query.
pub fn freudenthal_mult(a: &GeneralizedCartanMatrix, lambda: &[i64], k: &[i64]) -> Result<u64> {
    Ok(Freudenthal::new(a, lambda)?.multiplicity(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!(freudenthal_mult(&a2, &[1, 1], &[1, 1]).unwrap(), 2);
        assert_eq!(freudenthal_mult(&a2, &[1, 1], &[0, 0]).unwrap(), 1);
        let a1 = gcm(&[&[2]]);
        assert_eq!(freudenthal_mult(&a1, &[3], &[2]).unwrap(), 1);
        assert_eq!(freudenthal_mult(&a1, &[3], &[4]).unwrap(), 0);
        assert_eq!(freudenthal_mult(&a1, &[1], &[1]).unwrap(), 1);
    }

    #[test]
    fn adjoint_a2_dimension() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        let mut f = Freudenthal::new(&a2, &[1, 1]).unwrap();
        let total: u64 = (0..=4).flat_map(|x| (0..=4).map(move |y| vec![x, y])).map(|k| f.multiplicity(&k)).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn root_multiplicities() {
        let aff = gcm(&[&[2, -2], &[-2, 2]]);
        let mut f = Freudenthal::new(&aff, &[0, 0]).unwrap();
        // delta = alpha_1 + alpha_2 has multiplicity 1 in A_1^(1)
        assert_eq!(f.root_multiplicity(&[1, 1]), 1);
        assert_eq!(f.root_multiplicity(&[2, 2]), 1);
        assert_eq!(f.root_multiplicity(&[2, 1]), 1);
        assert_eq!(f.root_multiplicity(&[3, 1]), 0);
        let hyp = gcm(&[&[2, -3], &[-3, 2]]);
        let mut f = Freudenthal::new(&hyp, &[0, 0]).unwrap();
        assert_eq!(f.root_multiplicity(&[3, 1]), 1);
        assert_eq!(f.root_multiplicity(&[1, 1]), 1);
        assert_eq!(f.root_multiplicity(&[4, 1]), 0);
        for r in crate::rootsys::real_roots_up_to_height(&hyp, 8) {
            assert_eq!(f.root_multiplicity(&r.root.0), 1, "{:?}", r.root);
        }
    }
}
