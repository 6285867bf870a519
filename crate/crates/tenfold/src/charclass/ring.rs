//! Truncated graded polynomial rings over the two-element field.
//!
//! A ring is a list of generators, each with a degree and a truncation
//! exponent `p` meaning `gen^p = 0`. The monomial basis is finite, so a
//! polynomial is just the set of monomials with coefficient 1 and
//! addition is symmetric difference.

use super::CharClassError;
use std::collections::BTreeSet;
use std::fmt;

/// One multiplicative generator: `name` of the given `degree`, nilpotent
/// with `name^truncation = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingGenerator {
    pub name: String,
    pub degree: usize,
    pub truncation: u16,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedF2Ring {
    generators: Vec<RingGenerator>,
}

impl GradedF2Ring {
    pub fn new(generators: Vec<RingGenerator>) -> Result<Self, CharClassError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            let well_formed = !g.name.is_empty()
                && g.name
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic())
                && g.name.chars().all(|c| c.is_ascii_alphanumeric());
            if !well_formed {
                return Err(CharClassError::Parse {
                    input: g.name.clone(),
                    reason: "generator names are alphanumeric and start with a letter".to_string(),
                });
            }
            if g.degree == 0 || g.truncation < 2 {
                return Err(CharClassError::Parse {
                    input: g.name.clone(),
                    reason: "generators need degree >= 1 and truncation >= 2".to_string(),
                });
            }
            if !seen.insert(g.name.clone()) {
                return Err(CharClassError::Duplicate {
                    name: g.name.clone(),
                });
            }
        }
        Ok(GradedF2Ring { generators })
    }

    pub fn generators(&self) -> &[RingGenerator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Degree of the unique top monomial, every generator at its maximal
    /// surviving power.
    pub fn top_degree(&self) -> usize {
        self.generators
            .iter()
            .map(|g| g.degree * (g.truncation as usize - 1))
            .sum()
    }

    fn top_monomial(&self) -> Vec<u16> {
        self.generators.iter().map(|g| g.truncation - 1).collect()
    }

    fn monomial_degree(&self, exponents: &[u16]) -> usize {
        self.generators
            .iter()
            .zip(exponents)
            .map(|(g, &e)| g.degree * e as usize)
            .sum()
    }

    fn render_monomial(&self, exponents: &[u16]) -> String {
        let factors: Vec<String> = self
            .generators
            .iter()
            .zip(exponents)
            .filter(|&(_, &e)| e > 0)
            .map(|(g, &e)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl fmt::Display for GradedF2Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let powers: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}^{}", g.name, g.truncation))
            .collect();
        write!(f, "Z2[{}]/({})", names.join(","), powers.join(", "))
    }
}

/// Polynomial over the two-element field in a [`GradedF2Ring`]; the term
/// set holds exponent vectors indexed like the ring's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedF2Poly {
    ring: GradedF2Ring,
    terms: BTreeSet<Vec<u16>>,
}

impl GradedF2Poly {
    pub fn zero(ring: &GradedF2Ring) -> Self {
        GradedF2Poly {
            ring: ring.clone(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(ring: &GradedF2Ring) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(vec![0; ring.generators.len()]);
        p
    }

    pub fn generator(ring: &GradedF2Ring, name: &str) -> Result<Self, CharClassError> {
        let index = ring
            .generator_index(name)
            .ok_or_else(|| CharClassError::Parse {
                input: name.to_string(),
                reason: format!("no such generator in {ring}"),
            })?;
        let mut exponents = vec![0; ring.generators.len()];
        exponents[index] = 1;
        let mut p = Self::zero(ring);
        p.terms.insert(exponents);
        Ok(p)
    }

    pub fn ring(&self) -> &GradedF2Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharClassError> {
        if self.ring != other.ring {
            return Err(CharClassError::RingMismatch);
        }
        let mut terms = self.terms.clone();
        for t in &other.terms {
            if !terms.remove(t) {
                terms.insert(t.clone());
            }
        }
        Ok(GradedF2Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CharClassError> {
        if self.ring != other.ring {
            return Err(CharClassError::RingMismatch);
        }
        let mut terms: BTreeSet<Vec<u16>> = BTreeSet::new();
        for s in &self.terms {
            'product: for t in &other.terms {
                let mut exponents = Vec::with_capacity(s.len());
                for ((a, b), g) in s.iter().zip(t).zip(&self.ring.generators) {
                    let e = a + b;
                    if e >= g.truncation {
                        continue 'product;
                    }
                    exponents.push(e);
                }
                if !terms.remove(&exponents) {
                    terms.insert(exponents);
                }
            }
        }
        Ok(GradedF2Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exponent {
            acc = acc.mul(self).expect("same ring by construction");
        }
        acc
    }

    /// The homogeneous part of the given degree.
    pub fn component(&self, degree: usize) -> Self {
        GradedF2Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| self.ring.monomial_degree(t) == degree)
                .cloned()
                .collect(),
        }
    }

    /// `Some(d)` when the polynomial is nonzero and every term has degree
    /// `d`; `None` for zero or mixed-degree polynomials.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.iter().map(|t| self.ring.monomial_degree(t));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Degrees of the terms, ascending and deduplicated.
    pub fn term_degrees(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .terms
            .iter()
            .map(|t| self.ring.monomial_degree(t))
            .collect();
        set.into_iter().collect()
    }

    /// Coefficient of the ring's top monomial.
    pub fn top_coefficient(&self) -> u8 {
        u8::from(self.terms.contains(&self.ring.top_monomial()))
    }

    /// Reinterprets this polynomial in a larger ring whose generators
    /// contain this ring's generators as a contiguous block starting at
    /// `offset`; names may differ, degrees and truncations must match.
    pub fn pullback(
        &self,
        into: &GradedF2Ring,
        offset: usize,
    ) -> Result<GradedF2Poly, CharClassError> {
        let inner = &self.ring.generators;
        let outer = &into.generators;
        if offset + inner.len() > outer.len()
            || inner
                .iter()
                .zip(&outer[offset..])
                .any(|(a, b)| a.degree != b.degree || a.truncation != b.truncation)
        {
            return Err(CharClassError::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exponents = vec![0; outer.len()];
                exponents[offset..offset + t.len()].copy_from_slice(t);
                exponents
            })
            .collect();
        Ok(GradedF2Poly {
            ring: into.clone(),
            terms,
        })
    }

    /// Parses `"1 + a + a^4"` style input: terms joined by `+`, each a
    /// product of generator powers joined by `*`, with `0` and `1` as the
    /// constants. Repeated terms cancel.
    pub fn parse(ring: &GradedF2Ring, text: &str) -> Result<Self, CharClassError> {
        let err = |reason: String| CharClassError::Parse {
            input: text.to_string(),
            reason,
        };
        if text.trim().is_empty() {
            return Err(err("empty polynomial".to_string()));
        }
        let mut poly = Self::zero(ring);
        for term in text.split('+') {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let mut exponents = vec![0u16; ring.generators.len()];
            if term != "1" {
                if term.is_empty() {
                    return Err(err("empty term".to_string()));
                }
                for factor in term.split('*') {
                    let factor = factor.trim();
                    let (name, power) = match factor.split_once('^') {
                        Some((name, power)) => {
                            let power: u16 = power
                                .trim()
                                .parse()
                                .map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                            (name.trim(), power)
                        }
                        None => (factor, 1),
                    };
                    if power == 0 {
                        return Err(err(format!("zero exponent in {factor:?}")));
                    }
                    let index = ring
                        .generator_index(name)
                        .ok_or_else(|| err(format!("unknown generator {name:?} in {ring}")))?;
                    exponents[index] += power;
                    if exponents[index] >= ring.generators[index].truncation {
                        return Err(err(format!(
                            "{name}^{} vanishes in {ring}",
                            exponents[index]
                        )));
                    }
                }
            }
            if !poly.terms.remove(&exponents) {
                poly.terms.insert(exponents);
            }
        }
        Ok(poly)
    }

    /// Renders terms in ascending degree, ties broken by exponent order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<&Vec<u16>> = self.terms.iter().collect();
        terms.sort_by_key(|t| {
            (
                self.ring.monomial_degree(t),
                std::cmp::Reverse((*t).clone()),
            )
        });
        terms
            .iter()
            .map(|t| self.ring.render_monomial(t))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GradedF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truncated_line(n: u16) -> GradedF2Ring {
        GradedF2Ring::new(vec![RingGenerator {
            name: "a".to_string(),
            degree: 1,
            truncation: n + 1,
        }])
        .unwrap()
    }

    #[test]
    fn squaring_kills_cross_terms() {
        let ring = truncated_line(4);
        let p = GradedF2Poly::parse(&ring, "1 + a").unwrap();
        assert_eq!(p.mul(&p).unwrap().render(), "1 + a^2");
    }

    #[test]
    fn fifth_power_truncates_to_three_terms() {
        let ring = truncated_line(4);
        let p = GradedF2Poly::parse(&ring, "1 + a").unwrap();
        assert_eq!(p.pow(5).render(), "1 + a + a^4");
    }

    #[test]
    fn one_is_a_multiplicative_identity() {
        let ring = truncated_line(4);
        let p = GradedF2Poly::parse(&ring, "1 + a^2 + a^3").unwrap();
        assert_eq!(p.mul(&GradedF2Poly::one(&ring)).unwrap(), p);
    }

    #[test]
    fn characteristic_two_identities_hold_for_every_pair() {
        // Sweep all 8 polynomials of Z2[a]/(a^3): p + p = 0 and
        // (p + q)^2 = p^2 + q^2.
        let ring = truncated_line(2);
        let all: Vec<GradedF2Poly> = (0u8..8)
            .map(|mask| {
                let mut p = GradedF2Poly::zero(&ring);
                for (bit, term) in ["1", "a", "a^2"].iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        p = p.add(&GradedF2Poly::parse(&ring, term).unwrap()).unwrap();
                    }
                }
                p
            })
            .collect();
        for p in &all {
            assert!(p.add(p).unwrap().is_zero());
            for q in &all {
                let sum_sq = p.add(q).unwrap().pow(2);
                let sq_sum = p.pow(2).add(&q.pow(2)).unwrap();
                assert_eq!(sum_sq, sq_sum, "p = {p}, q = {q}");
            }
        }
    }

    #[test]
    fn parse_round_trips_through_render() {
        let ring = GradedF2Ring::new(vec![
            RingGenerator {
                name: "b1".to_string(),
                degree: 2,
                truncation: 2,
            },
            RingGenerator {
                name: "b2".to_string(),
                degree: 2,
                truncation: 2,
            },
        ])
        .unwrap();
        for text in ["0", "1", "1 + b1*b2", "b1 + b2", "1 + b1 + b2 + b1*b2"] {
            let p = GradedF2Poly::parse(&ring, text).unwrap();
            assert_eq!(p.render(), text);
            assert_eq!(GradedF2Poly::parse(&ring, &p.render()).unwrap(), p);
        }
        // Repeated terms cancel over the two-element field.
        assert!(GradedF2Poly::parse(&ring, "b1 + b1").unwrap().is_zero());
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let ring = truncated_line(4);
        for text in ["", "1 +", "c", "a^0", "a^5", "a^x", "a^2*a^3"] {
            assert!(
                GradedF2Poly::parse(&ring, text).is_err(),
                "{text:?} should not parse"
            );
        }
    }

    #[test]
    fn mixed_ring_arithmetic_is_rejected() {
        let p = GradedF2Poly::one(&truncated_line(2));
        let q = GradedF2Poly::one(&truncated_line(3));
        assert!(matches!(p.add(&q), Err(CharClassError::RingMismatch)));
        assert!(matches!(p.mul(&q), Err(CharClassError::RingMismatch)));
    }

    #[test]
    fn components_split_by_degree() {
        let ring = truncated_line(4);
        let p = GradedF2Poly::parse(&ring, "1 + a + a^4").unwrap();
        assert_eq!(p.component(1).render(), "a");
        assert_eq!(p.component(2).render(), "0");
        assert_eq!(p.term_degrees(), vec![0, 1, 4]);
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.component(4).homogeneous_degree(), Some(4));
        assert_eq!(p.component(4).top_coefficient(), 1);
    }

    #[test]
    fn pullback_reindexes_into_a_larger_ring() {
        let line = truncated_line(1);
        let square = GradedF2Ring::new(vec![
            RingGenerator {
                name: "a1".to_string(),
                degree: 1,
                truncation: 2,
            },
            RingGenerator {
                name: "a2".to_string(),
                degree: 1,
                truncation: 2,
            },
        ])
        .unwrap();
        let a = GradedF2Poly::parse(&line, "1 + a").unwrap();
        assert_eq!(a.pullback(&square, 0).unwrap().render(), "1 + a1");
        assert_eq!(a.pullback(&square, 1).unwrap().render(), "1 + a2");
        assert!(a.pullback(&square, 2).is_err());
    }

    #[test]
    fn ring_construction_rejects_bad_generators() {
        let generator = |name: &str, degree, truncation| RingGenerator {
            name: name.to_string(),
            degree,
            truncation,
        };
        assert!(GradedF2Ring::new(vec![generator("a", 0, 2)]).is_err());
        assert!(GradedF2Ring::new(vec![generator("a", 1, 1)]).is_err());
        assert!(GradedF2Ring::new(vec![generator("2a", 1, 2)]).is_err());
        assert!(GradedF2Ring::new(vec![generator("a*b", 1, 2)]).is_err());
        assert!(GradedF2Ring::new(vec![generator("a", 1, 2), generator("a", 1, 3)]).is_err());
        let ring = GradedF2Ring::new(vec![generator("a", 1, 5)]).unwrap();
        assert_eq!(ring.top_degree(), 4);
        assert_eq!(ring.to_string(), "Z2[a]/(a^5)");
    }
}
