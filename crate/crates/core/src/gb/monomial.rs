use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    /// Lattice element id.
    Z(usize),
    /// Poset element index.
    X(usize),
    Y(usize),
    T,
}

/// An ordered set of named variables; monomials index into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Variable>,
    names: Vec<String>,
}

impl Ring {
    pub fn new(vars: Vec<(Variable, String)>) -> Ring {
        let (vars, names) = vars.into_iter().unzip();
        Ring { vars, names }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, k: usize) -> Variable {
        self.vars[k]
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index_of(&self, v: Variable) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn one(&self) -> Monomial {
        Monomial(vec![0; self.len()])
    }

    pub fn variable(&self, k: usize) -> Monomial {
        let mut m = self.one();
        m.0[k] = 1;
        m
    }

    /// Product of the given variable indices (with repetition).
    pub fn monomial(&self, factors: &[usize]) -> Monomial {
        let mut m = self.one();
        for &k in factors {
            m.0[k] += 1;
        }
        m
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .support()
            .map(|(k, e)| if e == 1 { self.names[k].clone() } else { format!("{}^{e}", self.names[k]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_binomial(&self, b: &Binomial) -> String {
        format!("{} - {}", self.format_monomial(&b.lead), self.format_monomial(&b.trail))
    }

    pub fn exponents_json(&self, m: &Monomial) -> BTreeMap<String, u32> {
        m.support().map(|(k, e)| (self.names[k].clone(), e)).collect()
    }

    pub fn binomial_json(&self, b: &Binomial) -> BinomialJson {
        BinomialJson { lead: self.exponents_json(&b.lead), trail: self.exponents_json(&b.trail) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialJson {
    pub lead: BTreeMap<String, u32>,
    pub trail: BTreeMap<String, u32>,
}

/// Dense exponent vector over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u8>);

impl Monomial {
    pub fn from_exponents(exponents: Vec<u8>) -> Monomial {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.0[k] as u32
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|&(_, &e)| e > 0).map(|(k, &e)| (k, e as u32))
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::IncompatibleVariables { left: self.0.len(), right: other.0.len() });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.support().map(|(k, e)| if e == 1 { format!("v{k}") } else { format!("v{k}^{e}") }).collect();
        write!(f, "{}", if parts.is_empty() { "1".into() } else { parts.join("*") })
    }
}

/// `lead - trail` with `lead > trail` in the order it was built for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
}

impl Binomial {
    pub fn degree(&self) -> u32 {
        self.lead.degree().max(self.trail.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lead.degree() == self.trail.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(vec![
            (Variable::Z(0), "z:00".into()),
            (Variable::Z(1), "z:10".into()),
            (Variable::X(0), "x:p1".into()),
            (Variable::T, "t".into()),
        ])
    }

    #[test]
    fn arithmetic() {
        let r = ring();
        let a = r.monomial(&[0, 0, 2]);
        let b = r.monomial(&[0, 1]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.lcm(&b), r.monomial(&[0, 0, 1, 2]));
        assert!(r.variable(0).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.div(&r.variable(2)), r.monomial(&[0, 0]));
        assert!(r.variable(3).is_coprime(&a));
        assert!(!b.is_coprime(&a));
        assert_eq!(r.format_monomial(&a), "z:00^2*x:p1");
        assert_eq!(r.index_of(Variable::T), Some(3));
    }

    #[test]
    fn incompatible_rings() {
        let a = Monomial::from_exponents(vec![1, 0]);
        let b = Monomial::from_exponents(vec![1]);
        assert!(matches!(a.try_mul(&b), Err(Error::IncompatibleVariables { left: 2, right: 1 })));
    }

    #[test]
    fn json_names() {
        let r = ring();
        let b = Binomial { lead: r.monomial(&[2, 3]), trail: r.monomial(&[0, 1]) };
        let json = serde_json::to_string(&r.binomial_json(&b)).unwrap();
        assert_eq!(json, r#"{"lead":{"t":1,"x:p1":1},"trail":{"z:00":1,"z:10":1}}"#);
    }
}
