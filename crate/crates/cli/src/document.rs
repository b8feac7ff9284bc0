//! The session document: one TOML file describing a presentation and the
//! inputs of every command.
//!
//! ```toml
//! [group]
//! spec = "cyclic 2"            # or: table = [[0, 1], [1, 0]]
//! aliases = { s = 1 }          # optional, alias -> input-table index
//!
//! [presentation]
//! subgroup = [0]               # element references: index or name
//! tuple = ["e", "e", "s"]
//! cocycle = { modulus = 2, exponents = [[0]] }   # optional, trivial by default
//!
//! [polynomials.f]
//! terms = ["1 x0:e x1:e", "-1 x1:e x0:e"]
//! ```
//!
//! The exponent matrix is indexed in the order the subgroup members are
//! listed. `[other]` (same shape as `[presentation]`) is the second input of
//! `equivalent`; `[identity_check]` and `[envelope]` select polynomials.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use graded_identities::cohomology::{Cocycle2, CocycleCheck};
use graded_identities::graded_algebra::Presentation;
use graded_identities::grassmann::Z2Factorization;
use graded_identities::groups::{build_group, Elem, FiniteGroup, GroupSpec, Subgroup};
use graded_identities::polynomials::GradedPolynomial;

/// Input problem, located by field path (or by line for syntax errors).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field}: {message}")]
pub struct InputError {
    pub field: String,
    pub message: String,
}

pub fn input_error(field: impl Into<String>, message: impl ToString) -> InputError {
    InputError {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub modulus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub subgroup: Vec<ElemRef>,
    pub tuple: Vec<ElemRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    /// Cyclotomic order of the coefficients; the cocycle modulus by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityCheckDoc {
    pub polynomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeDoc {
    /// The group G, with the document group read as Z2 x G.
    pub factor: String,
    pub generators: usize,
    pub polynomial: String,
    /// `[odd, g]` for each element of the document group, by input index;
    /// when absent the document group must be `direct(cyclic 2, G)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<(u8, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub group: GroupDoc,
    pub presentation: PresentationDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<PresentationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub polynomials: BTreeMap<String, PolynomialDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_check: Option<IdentityCheckDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope: Option<EnvelopeDoc>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        toml::from_str(text).map_err(|e| input_error("document", e.to_string().trim_end()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize")
    }
}

/// A document with every reference resolved.
#[derive(Debug, Clone)]
pub struct Session {
    pub doc: Document,
    pub group: Arc<FiniteGroup>,
    pub presentation: Presentation,
    pub other: Option<Presentation>,
}

fn resolve(group: &FiniteGroup, r: &ElemRef, field: &str) -> Result<Elem, InputError> {
    let text = match r {
        ElemRef::Index(i) => i.to_string(),
        ElemRef::Name(s) => s.clone(),
    };
    group
        .lookup(&text)
        .ok_or_else(|| input_error(field, format!("unknown element `{text}`")))
}

fn build_group_doc(doc: &GroupDoc) -> Result<FiniteGroup, InputError> {
    let g = match (&doc.spec, &doc.table) {
        (Some(spec), None) => {
            let s = GroupSpec::parse(spec).map_err(|e| input_error("group.spec", e))?;
            build_group(&s).map_err(|e| input_error("group.spec", e))?
        }
        (None, Some(rows)) => FiniteGroup::from_table(rows).map_err(|e| input_error("group.table", e))?,
        _ => return Err(input_error("group", "give exactly one of `spec` and `table`")),
    };
    g.with_aliases(doc.aliases.iter().map(|(k, &v)| (k.as_str(), v)))
        .map_err(|e| input_error("group.aliases", e))
}

fn build_presentation(group: &Arc<FiniteGroup>, doc: &PresentationDoc, name: &str) -> Result<Presentation, InputError> {
    let members = doc
        .subgroup
        .iter()
        .enumerate()
        .map(|(k, r)| resolve(group, r, &format!("{name}.subgroup[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if members.iter().collect::<BTreeSet<_>>().len() != members.len() {
        return Err(input_error(format!("{name}.subgroup"), "repeated element"));
    }
    let h = Subgroup::new(group.clone(), &members).map_err(|e| input_error(format!("{name}.subgroup"), e))?;
    let tuple = doc
        .tuple
        .iter()
        .enumerate()
        .map(|(k, r)| resolve(group, r, &format!("{name}.tuple[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let cocycle = match &doc.cocycle {
        None => Cocycle2::trivial(h, 1),
        Some(CocycleDoc { modulus, exponents: None }) => {
            if *modulus == 0 {
                return Err(input_error(format!("{name}.cocycle.modulus"), "must be positive"));
            }
            Cocycle2::trivial(h, *modulus)
        }
        Some(CocycleDoc {
            modulus,
            exponents: Some(rows),
        }) => {
            let field = format!("{name}.cocycle.exponents");
            let k = members.len();
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(input_error(field, format!("expected a {k}x{k} matrix")));
            }
            // document order -> local order of the sorted member list
            let mut local = vec![vec![0i64; k]; k];
            for (p, &a) in members.iter().enumerate() {
                for (q, &b) in members.iter().enumerate() {
                    local[h.local_index(a).unwrap()][h.local_index(b).unwrap()] = rows[p][q];
                }
            }
            let c = Cocycle2::from_exponents(h, *modulus, &local).map_err(|e| input_error(&field, e))?;
            let check = c.validate();
            let n = |x: Elem| group.name(x).to_string();
            match check {
                CocycleCheck::Ok => {}
                CocycleCheck::IdentityViolated { a, b, d } => {
                    return Err(input_error(
                        field,
                        format!("cocycle identity fails on triple ({}, {}, {})", n(a), n(b), n(d)),
                    ))
                }
                CocycleCheck::NotNormalized { h } => {
                    return Err(input_error(field, format!("not normalized at {}", n(h))))
                }
            }
            c
        }
    };
    Presentation::new_unchecked(cocycle, tuple).map_err(|e| input_error(format!("{name}.tuple"), e))
}

impl Session {
    pub fn from_document(doc: Document) -> Result<Self, InputError> {
        let group = Arc::new(build_group_doc(&doc.group)?);
        let presentation = build_presentation(&group, &doc.presentation, "presentation")?;
        let other = doc
            .other
            .as_ref()
            .map(|o| build_presentation(&group, o, "other"))
            .transpose()?;
        let s = Session {
            doc,
            group,
            presentation,
            other,
        };
        for name in s.doc.polynomials.keys() {
            if s.doc.envelope.as_ref().is_some_and(|e| &e.polynomial == name) {
                s.envelope_polynomial()?;
            } else {
                s.polynomial(name)?;
            }
        }
        if let Some(ic) = &s.doc.identity_check {
            s.polynomial(&ic.polynomial)?;
        }
        if s.doc.envelope.is_some() {
            s.factorization()?;
        }
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        Self::from_document(Document::parse(text)?)
    }

    fn parse_poly(&self, name: &str, group: &FiniteGroup) -> Result<GradedPolynomial, InputError> {
        let field = format!("polynomials.{name}");
        let doc = self
            .doc
            .polynomials
            .get(name)
            .ok_or_else(|| input_error(&field, "no such polynomial"))?;
        let order = doc.order.unwrap_or(self.presentation.cocycle().modulus());
        if order == 0 {
            return Err(input_error(format!("{field}.order"), "must be positive"));
        }
        GradedPolynomial::parse_terms(group, order, &doc.terms).map_err(|e| input_error(format!("{field}.terms"), e))
    }

    /// Polynomial graded by the document group.
    pub fn polynomial(&self, name: &str) -> Result<GradedPolynomial, InputError> {
        self.parse_poly(name, &self.group)
    }

    /// The polynomial for `identity-check`: the named one, or the only one.
    pub fn identity_check_polynomial(&self) -> Result<GradedPolynomial, InputError> {
        match &self.doc.identity_check {
            Some(ic) => self.polynomial(&ic.polynomial),
            None if self.doc.polynomials.len() == 1 => self.polynomial(self.doc.polynomials.keys().next().unwrap()),
            None => Err(input_error("identity_check.polynomial", "missing")),
        }
    }

    pub fn factorization(&self) -> Result<Z2Factorization, InputError> {
        let env = self
            .doc
            .envelope
            .as_ref()
            .ok_or_else(|| input_error("envelope", "missing section"))?;
        let spec = GroupSpec::parse(&env.factor).map_err(|e| input_error("envelope.factor", e))?;
        let small = Arc::new(build_group(&spec).map_err(|e| input_error("envelope.factor", e))?);
        let split = match &env.split {
            Some(list) => {
                if list.len() != self.group.order() {
                    return Err(input_error("envelope.split", "one entry per group element expected"));
                }
                let mut out = vec![(false, 0); self.group.order()];
                for (k, &(odd, g)) in list.iter().enumerate() {
                    let x = self
                        .group
                        .lookup(&k.to_string())
                        .ok_or_else(|| input_error("envelope.split", "index out of range"))?;
                    let g = small
                        .lookup(&g.to_string())
                        .ok_or_else(|| input_error(format!("envelope.split[{k}]"), "G-part out of range"))?;
                    out[x] = (odd == 1, g);
                }
                out
            }
            None => {
                let n = small.order();
                if self.group.order() != 2 * n {
                    return Err(input_error("envelope.factor", "group order is not twice the factor order"));
                }
                self.group.elements().map(|x| (x >= n, x % n)).collect()
            }
        };
        Z2Factorization::new(self.group.clone(), small, split).map_err(|e| input_error("envelope", e))
    }

    /// The `[envelope]` polynomial, graded by the factor group.
    pub fn envelope_polynomial(&self) -> Result<GradedPolynomial, InputError> {
        let env = self
            .doc
            .envelope
            .as_ref()
            .ok_or_else(|| input_error("envelope", "missing section"))?;
        let fac = self.factorization()?;
        self.parse_poly(&env.polynomial, fac.small())
    }
}
