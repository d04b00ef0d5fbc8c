//! JSON model documents.
//!
//! ```json
//! {
//!   "name": "family",
//!   "frame": ["Father", "Mother", "Son"],
//!   "masses": [
//!     { "set": ["Father", "Mother"], "mass": "9/10" },
//!     { "set": ["Son"], "mass": 0.1 }
//!   ],
//!   "random_variables": [
//!     { "name": "x", "values": { "Father": "1", "Mother": "0", "Son": "0" } }
//!   ]
//! }
//! ```
//!
//! A product model replaces `frame` with `"product": {"left": [..], "right": [..]}`
//! and names outcomes `left:right`. A price document carries `prices`
//! entries (`{"set": [..], "price": ".."}`) instead of, or beside, `masses`;
//! unlisted sets are priced 0. Numbers may be `"p/q"` strings, decimal
//! strings or JSON numbers, and are read exactly. [`save_model`] writes a
//! canonical form: entries sorted by mask, every number as `"p/q"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expectation::RandomVariable;
use crate::frame::{Frame, SubsetMask};
use crate::mass::{MassFunction, SetFunction};
use crate::products::ProductFrame;
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberText {
    Text(String),
    Number(serde_json::Number),
}

impl NumberText {
    pub fn exact(r: &Rational) -> Self {
        NumberText::Text(format_rational(r))
    }

    fn parse(&self, locus: &str) -> Result<Rational> {
        let text = match self {
            NumberText::Text(t) => t.clone(),
            NumberText::Number(n) => n.to_string(),
        };
        parse_rational(&text).ok_or_else(|| Error::parse(locus, format!("`{text}` is not a rational number")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntry {
    pub set: Vec<String>,
    pub mass: NumberText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriceEntry {
    pub set: Vec<String>,
    pub price: NumberText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableEntry {
    pub name: String,
    pub values: BTreeMap<String, NumberText>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub masses: Vec<MassEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prices: Vec<PriceEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub random_variables: Vec<VariableEntry>,
}

/// A loaded model, always exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    pub name: Option<String>,
    pub description: Option<String>,
    pub section: Option<String>,
    pub frame: Frame,
    pub product: Option<ProductFrame>,
    pub mass: Option<MassFunction<Rational>>,
    pub prices: Option<SetFunction<Rational>>,
    pub random_variables: Vec<(String, RandomVariable<Rational>)>,
}

impl Model {
    pub fn from_mass(mass: MassFunction<Rational>) -> Self {
        Model {
            name: None,
            description: None,
            section: None,
            frame: mass.frame().clone(),
            product: None,
            mass: Some(mass),
            prices: None,
            random_variables: Vec::new(),
        }
    }

    pub fn from_prices(prices: SetFunction<Rational>) -> Self {
        Model {
            name: None,
            description: None,
            section: None,
            frame: prices.frame().clone(),
            product: None,
            mass: None,
            prices: Some(prices),
            random_variables: Vec::new(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }

    /// Marks the model as living on `pf`; its frame must be `pf.product()`.
    pub fn with_product(mut self, pf: ProductFrame) -> Result<Self> {
        self.frame.ensure_same(pf.product())?;
        self.product = Some(pf);
        Ok(self)
    }

    pub fn with_variable(mut self, name: impl Into<String>, x: RandomVariable<Rational>) -> Result<Self> {
        self.frame.ensure_same(x.frame())?;
        self.random_variables.push((name.into(), x));
        Ok(self)
    }

    pub fn mass(&self) -> Result<&MassFunction<Rational>> {
        self.mass
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("model has no masses".into()))
    }

    pub fn variable(&self, name: &str) -> Result<&RandomVariable<Rational>> {
        self.random_variables
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x)
            .ok_or_else(|| Error::InvalidArgument(format!("no random variable named `{name}`")))
    }

    /// Prices if present, otherwise the belief table of the masses.
    pub fn price_table(&self) -> Result<SetFunction<Rational>> {
        match (&self.prices, &self.mass) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(m)) => m.belief_table(),
            (None, None) => Err(Error::InvalidArgument("model has neither prices nor masses".into())),
        }
    }

    pub fn from_document(doc: &ModelDocument) -> Result<Self> {
        let product = doc
            .product
            .as_ref()
            .map(|spec| -> Result<ProductFrame> {
                let left = Frame::new(spec.left.clone()).map_err(|e| Error::located("product.left", e))?;
                let right = Frame::new(spec.right.clone()).map_err(|e| Error::located("product.right", e))?;
                ProductFrame::new(left, right).map_err(|e| Error::located("product", e))
            })
            .transpose()?;
        let frame = match (&doc.frame, &product) {
            (Some(labels), None) => Frame::new(labels.clone()).map_err(|e| Error::located("frame", e))?,
            (Some(labels), Some(pf)) => {
                if labels.as_slice() != pf.product().labels() {
                    return Err(Error::located("frame", Error::FrameMismatch));
                }
                pf.product().clone()
            }
            (None, Some(pf)) => pf.product().clone(),
            (None, None) => return Err(Error::parse("document", "missing `frame` or `product`")),
        };
        if doc.masses.is_empty() && doc.prices.is_empty() {
            return Err(Error::parse("document", "needs `masses` or `prices`"));
        }

        let mass = if doc.masses.is_empty() {
            None
        } else {
            let mut entries = Vec::with_capacity(doc.masses.len());
            for (i, entry) in doc.masses.iter().enumerate() {
                let locus = format!("masses[{i}]");
                let set = frame.subset(&entry.set).map_err(|e| Error::located(&locus, e))?;
                let value = entry.mass.parse(&format!("{locus}.mass"))?;
                if set.is_empty() && value != Rational::from_integer(0.into()) {
                    return Err(Error::located(&locus, Error::EmptySetMass(format_rational(&value))));
                }
                if value < Rational::from_integer(0.into()) {
                    return Err(Error::located(
                        &locus,
                        Error::NegativeMass {
                            set: frame.describe(set),
                            mass: format_rational(&value),
                        },
                    ));
                }
                entries.push((set, value));
            }
            Some(MassFunction::new(frame.clone(), entries).map_err(|e| Error::located("masses", e))?)
        };

        let prices = if doc.prices.is_empty() {
            None
        } else {
            let mut table = SetFunction::zeros(frame.clone()).map_err(|e| Error::located("prices", e))?;
            let mut seen = BTreeMap::new();
            for (i, entry) in doc.prices.iter().enumerate() {
                let locus = format!("prices[{i}]");
                let set = frame.subset(&entry.set).map_err(|e| Error::located(&locus, e))?;
                if let Some(first) = seen.insert(set, i) {
                    return Err(Error::parse(&locus, format!("set already priced at prices[{first}]")));
                }
                table.set(set, entry.price.parse(&format!("{locus}.price"))?);
            }
            Some(table)
        };

        let mut random_variables = Vec::with_capacity(doc.random_variables.len());
        for (i, entry) in doc.random_variables.iter().enumerate() {
            let locus = format!("random_variables[{i}]");
            if random_variables.iter().any(|(n, _)| n == &entry.name) {
                return Err(Error::parse(&locus, format!("duplicate name `{}`", entry.name)));
            }
            let mut values = vec![None; frame.size()];
            for (label, value) in &entry.values {
                let index = frame.index_of(label).map_err(|e| Error::located(&locus, e))?;
                values[index] = Some(value.parse(&format!("{locus}.values.{label}"))?);
            }
            let values = values
                .into_iter()
                .enumerate()
                .map(|(j, v)| v.ok_or_else(|| Error::parse(&locus, format!("no value for `{}`", frame.label(j)))))
                .collect::<Result<Vec<_>>>()?;
            random_variables.push((entry.name.clone(), RandomVariable::new(frame.clone(), values)?));
        }

        Ok(Model {
            name: doc.name.clone(),
            description: doc.description.clone(),
            section: doc.section.clone(),
            frame,
            product,
            mass,
            prices,
            random_variables,
        })
    }

    /// Canonical document: sets in mask order, numbers as `"p/q"`.
    pub fn to_document(&self) -> ModelDocument {
        let labels = |set: SubsetMask| self.frame.members(set).into_iter().map(String::from).collect::<Vec<_>>();
        let masses = self
            .mass
            .iter()
            .flat_map(|m| m.focal())
            .map(|(set, mass)| MassEntry {
                set: labels(set),
                mass: NumberText::exact(mass),
            })
            .collect();
        let prices = self
            .prices
            .iter()
            .flat_map(|p| self.frame.subsets().map(move |set| (set, p.get(set))))
            .filter(|(_, price)| **price != Rational::from_integer(0.into()))
            .map(|(set, price)| PriceEntry {
                set: labels(set),
                price: NumberText::exact(price),
            })
            .collect();
        let random_variables = self
            .random_variables
            .iter()
            .map(|(name, x)| VariableEntry {
                name: name.clone(),
                values: self
                    .frame
                    .labels()
                    .iter()
                    .zip(x.values())
                    .map(|(l, v)| (l.clone(), NumberText::exact(v)))
                    .collect(),
            })
            .collect();
        let (frame, product) = match &self.product {
            Some(pf) => (
                None,
                Some(ProductSpec {
                    left: pf.left().labels().to_vec(),
                    right: pf.right().labels().to_vec(),
                }),
            ),
            None => (Some(self.frame.labels().to_vec()), None),
        };
        ModelDocument {
            name: self.name.clone(),
            description: self.description.clone(),
            section: self.section.clone(),
            frame,
            product,
            masses,
            prices,
            random_variables,
        }
    }
}

pub fn load_model(text: &str) -> Result<Model> {
    let doc: ModelDocument = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    Model::from_document(&doc)
}

pub fn save_model(model: &Model) -> String {
    let mut text = serde_json::to_string_pretty(&model.to_document()).expect("documents serialize");
    text.push('\n');
    text
}
