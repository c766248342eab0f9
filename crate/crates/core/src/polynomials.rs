//! Exact sparse polynomials in `x_1..x_n` and the deformation variable `b`,
//! and the two independent routes to the key and Lascoux polynomials of a
//! weak composition: diagram closures and tableau enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Num, One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compositions::WeakComposition;
use crate::diagrams::{kd_closure, kkd_closure, StateLimitExceeded};
use crate::tableaux::{enumerate_rssyt, enumerate_rsvt};

/// `b^beta * x_1^{e_1} * … * x_n^{e_n}`. Ordered by deformation degree,
/// then total degree, then the exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub beta: usize,
    pub exps: Vec<usize>,
}

impl Monomial {
    pub fn total_degree(&self) -> usize {
        self.exps.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.beta
            .cmp(&other.beta)
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| other.exps.cmp(&self.exps)) // descending lex, x1 heaviest first
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact integer coefficients and a fixed number of `x`
/// variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        assert_eq!(
            mono.exps.len(),
            self.vars,
            "exponent vector length mismatch"
        );
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Substitute an integer for the deformation variable.
    pub fn specialize_beta(&self, value: i64) -> Polynomial {
        let value = BigInt::from(value);
        let mut out = Polynomial::zero(self.vars);
        for (mono, coeff) in &self.terms {
            let mut scale = BigInt::one();
            for _ in 0..mono.beta {
                scale *= &value;
            }
            out.add_term(
                Monomial {
                    beta: 0,
                    exps: mono.exps.clone(),
                },
                coeff * scale,
            );
        }
        out
    }

    /// Number of terms at each deformation degree.
    pub fn beta_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for mono in self.terms.keys() {
            *census.entry(mono.beta).or_insert(0) += 1;
        }
        census
    }

    pub fn max_beta_degree(&self) -> usize {
        self.terms.keys().map(|m| m.beta).max().unwrap_or(0)
    }

    /// Sum of all coefficients (evaluation at `x_i = 1`).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c > &BigInt::zero())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let negative = coeff < &BigInt::zero();
            let magnitude = if negative {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() {
                factors.push(magnitude.to_string());
            }
            match mono.beta {
                0 => {}
                1 => factors.push("b".to_string()),
                k => factors.push(format!("b^{k}")),
            }
            for (i, &e) in mono.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                factors.push(magnitude.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    /// `{"vars": n, "terms": [{"coeff": "<decimal>", "beta": k, "exps": [..]}]}`;
    /// coefficients ride as decimal strings so arbitrary precision survives.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coeff: String,
            beta: usize,
            exps: &'a [usize],
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.to_string(),
                beta: m.beta,
                exps: &m.exps,
            })
            .collect();
        let mut s = serializer.serialize_struct("Polynomial", 2)?;
        s.serialize_field("vars", &self.vars)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            coeff: String,
            beta: usize,
            exps: Vec<usize>,
        }
        #[derive(Deserialize)]
        struct Raw {
            vars: usize,
            terms: Vec<Term>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut p = Polynomial::zero(raw.vars);
        for term in raw.terms {
            if term.exps.len() != raw.vars {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            let coeff = BigInt::from_str_radix(&term.coeff, 10)
                .map_err(|_| serde::de::Error::custom("coefficient is not a decimal integer"))?;
            p.add_term(
                Monomial {
                    beta: term.beta,
                    exps: term.exps,
                },
                coeff,
            );
        }
        Ok(p)
    }
}

/// Sum `b^excess * x^weight` over the given weighted objects, coefficient 1
/// each. Accumulation is a commutative merge, so the iteration order never
/// shows in the result.
pub fn polynomial_over(
    vars: usize,
    items: impl IntoIterator<Item = (WeakComposition, usize)>,
) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    for (weight, excess) in items {
        assert_eq!(weight.len(), vars);
        p.add_term(
            Monomial {
                beta: excess,
                exps: weight.parts().to_vec(),
            },
            BigInt::one(),
        );
    }
    p
}

/// Key polynomial by the diagram route: sum `x^wt` over the Kohnert closure.
pub fn key_polynomial_via_diagrams(
    alpha: &WeakComposition,
    state_cap: usize,
) -> Result<Polynomial, StateLimitExceeded> {
    let n = alpha.len();
    let kd = kd_closure(alpha, state_cap)?;
    Ok(polynomial_over(n, kd.iter().map(|d| (d.weight(n), 0))))
}

/// Key polynomial by the tableau route: sum `x^wt` over the single-valued
/// tableau family.
pub fn key_polynomial_via_tableaux(alpha: &WeakComposition) -> Polynomial {
    let n = alpha.len();
    polynomial_over(n, enumerate_rssyt(alpha).iter().map(|t| (t.weight(n), 0)))
}

/// Key polynomial, computed by both routes. The two sums are provably equal;
/// a mismatch is an implementation bug and panics.
pub fn key_polynomial(
    alpha: &WeakComposition,
    state_cap: usize,
) -> Result<Polynomial, StateLimitExceeded> {
    let via_diagrams = key_polynomial_via_diagrams(alpha, state_cap)?;
    let via_tableaux = key_polynomial_via_tableaux(alpha);
    assert_eq!(
        via_diagrams, via_tableaux,
        "key polynomial routes disagree for alpha={alpha}"
    );
    Ok(via_diagrams)
}

/// Lascoux polynomial by the diagram route: sum `b^ex x^wt` over the
/// K-Kohnert closure, optionally truncated by excess.
pub fn lascoux_polynomial_via_diagrams(
    alpha: &WeakComposition,
    max_excess: Option<usize>,
    state_cap: usize,
) -> Result<Polynomial, StateLimitExceeded> {
    let n = alpha.len();
    let kkd = kkd_closure(alpha, state_cap)?;
    Ok(polynomial_over(
        n,
        kkd.iter()
            .filter(|d| max_excess.is_none_or(|m| d.excess() <= m))
            .map(|d| (d.weight(n), d.excess())),
    ))
}

/// Lascoux polynomial by the tableau route: sum `b^ex x^wt` over the
/// set-valued tableau family, optionally truncated by excess.
pub fn lascoux_polynomial_via_tableaux(
    alpha: &WeakComposition,
    max_excess: Option<usize>,
) -> Polynomial {
    let n = alpha.len();
    polynomial_over(
        n,
        enumerate_rsvt(alpha, max_excess)
            .iter()
            .map(|t| (t.weight(n), t.excess())),
    )
}

/// Lascoux polynomial, computed by both routes; panics on a route mismatch.
pub fn lascoux_polynomial(
    alpha: &WeakComposition,
    max_excess: Option<usize>,
    state_cap: usize,
) -> Result<Polynomial, StateLimitExceeded> {
    let via_diagrams = lascoux_polynomial_via_diagrams(alpha, max_excess, state_cap)?;
    let via_tableaux = lascoux_polynomial_via_tableaux(alpha, max_excess);
    assert_eq!(
        via_diagrams, via_tableaux,
        "Lascoux polynomial routes disagree for alpha={alpha}"
    );
    Ok(via_diagrams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::all_compositions;
    use crate::diagrams::DEFAULT_STATE_CAP;

    fn wc(parts: &[usize]) -> WeakComposition {
        WeakComposition::new(parts.to_vec())
    }

    fn mono(beta: usize, exps: &[usize]) -> Monomial {
        Monomial {
            beta,
            exps: exps.to_vec(),
        }
    }

    #[test]
    fn key_polynomial_of_021() {
        let p = key_polynomial(&wc(&[0, 2, 1]), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(p.term_count(), 5);
        let mut want = Polynomial::zero(3);
        for exps in [[2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [0, 2, 1]] {
            want.add_term(mono(0, &exps), BigInt::one());
        }
        assert_eq!(p, want);
        assert_eq!(
            p.to_string(),
            "x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3"
        );
    }

    #[test]
    fn trivial_polynomials() {
        let p = key_polynomial(&wc(&[0, 0]), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(p.to_string(), "1");
        let p = key_polynomial(&wc(&[1, 0, 0]), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(p.to_string(), "x1");
    }

    #[test]
    fn lascoux_census_for_021() {
        let p = lascoux_polynomial(&wc(&[0, 2, 1]), None, DEFAULT_STATE_CAP).unwrap();
        // 11 objects collapse to 9 distinct terms: two one-ghost weights
        // occur twice
        assert_eq!(p.term_count(), 9);
        assert_eq!(p.coefficient_sum(), BigInt::from(11));
        let mut by_beta: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (m, c) in p.terms() {
            *by_beta.entry(m.beta).or_insert_with(BigInt::zero) += c;
        }
        let want: BTreeMap<usize, BigInt> = [(0, 5), (1, 5), (2, 1)]
            .map(|(b, c)| (b, BigInt::from(c)))
            .into();
        assert_eq!(by_beta, want);
        // the two-ghost pair carries weight (2,2,1)
        assert_eq!(p.terms().get(&mono(2, &[2, 2, 1])), Some(&BigInt::one()));
        assert!(p.all_coefficients_positive());
    }

    #[test]
    fn beta_specialization() {
        for alpha in all_compositions(3, 2) {
            let lascoux = lascoux_polynomial(&alpha, None, DEFAULT_STATE_CAP).unwrap();
            let key = key_polynomial(&alpha, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(lascoux.specialize_beta(0), key, "alpha={alpha}");
            // at b = 1 the coefficient sum counts the tableau family
            assert_eq!(
                lascoux.specialize_beta(1).coefficient_sum(),
                BigInt::from(enumerate_rsvt(&alpha, None).len()),
                "alpha={alpha}"
            );
        }
    }

    #[test]
    fn excess_cap_truncates_by_degree() {
        let alpha = wc(&[0, 2, 1]);
        let full = lascoux_polynomial(&alpha, None, DEFAULT_STATE_CAP).unwrap();
        for cap in 0..=3 {
            let capped = lascoux_polynomial(&alpha, Some(cap), DEFAULT_STATE_CAP).unwrap();
            let mut want = Polynomial::zero(3);
            for (m, c) in full.terms() {
                if m.beta <= cap {
                    want.add_term(m.clone(), c.clone());
                }
            }
            assert_eq!(capped, want);
        }
    }

    #[test]
    fn constant_and_negative_display() {
        let mut p = Polynomial::zero(2);
        p.add_term(mono(0, &[0, 0]), BigInt::from(1));
        p.add_term(mono(1, &[2, 0]), BigInt::from(-3));
        assert_eq!(p.to_string(), "1 - 3*b*x1^2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        let specialized = p.specialize_beta(-2);
        assert_eq!(specialized.to_string(), "1 + 6*x1^2");
    }

    #[test]
    fn add_term_cancels_to_zero() {
        let mut p = Polynomial::zero(1);
        p.add_term(mono(0, &[1]), BigInt::from(2));
        p.add_term(mono(0, &[1]), BigInt::from(-2));
        assert!(p.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let mut p = Polynomial::zero(2);
        p.add_term(mono(1, &[1, 0]), BigInt::from(4));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"vars":2,"terms":[{"coeff":"4","beta":1,"exps":[1,0]}]}"#
        );
        assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), p);
        let big = lascoux_big_round_trip();
        assert_eq!(
            serde_json::from_str::<Polynomial>(&serde_json::to_string(&big).unwrap()).unwrap(),
            big
        );
    }

    fn lascoux_big_round_trip() -> Polynomial {
        lascoux_polynomial(&wc(&[0, 2, 1]), None, DEFAULT_STATE_CAP).unwrap()
    }
}
