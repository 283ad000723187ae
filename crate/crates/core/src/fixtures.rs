//! Built-in example groups, forms, and parameters shared by the test suites
//! and the command-line front end. Each fixture names a based root datum
//! with an inner class, a list of inner-form twists, and a list of
//! parameters on the dual side.

use crate::aparam::AParamData;
use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::lparam::LParamData;
use crate::packets::InnerFormSpec;
use crate::realform::{fundamental_involution, FundamentalPair};
use crate::rootdata::{build_root_datum, BasedRootDatum, Isogeny};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    L,
    Arthur,
}

#[derive(Clone, Debug)]
pub struct FixtureParameter {
    pub name: String,
    pub kind: ParamKind,
    /// Simple-root subset of the dual datum (Arthur parameters only).
    pub levi: Vec<usize>,
    pub mu: Vec<Rat>,
    pub lambda: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct FixtureForm {
    pub name: String,
    /// Twist exponent in simply-connected cocharacter coordinates.
    pub y: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub cartan_type: String,
    pub isogeny: Isogeny,
    /// Diagram automorphism fixing the inner class.
    pub inner_class: Vec<usize>,
    pub forms: Vec<FixtureForm>,
    pub parameters: Vec<FixtureParameter>,
}

impl Fixture {
    pub fn root_datum(&self) -> Result<BasedRootDatum> {
        build_root_datum(&self.cartan_type, self.isogeny.clone())
    }

    pub fn fundamental_pair(&self) -> Result<FundamentalPair> {
        let rd = self.root_datum()?;
        let t = fundamental_involution(&rd, &self.inner_class)?;
        FundamentalPair::new(t)
    }

    pub fn form(&self, name: &str) -> Result<InnerFormSpec> {
        let f = self
            .forms
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::validation(format!("no form named '{name}'")))?;
        InnerFormSpec::new(self.fundamental_pair()?, &f.y)
    }

    pub fn form_specs(&self) -> Result<Vec<(String, InnerFormSpec)>> {
        self.forms
            .iter()
            .map(|f| {
                Ok((
                    f.name.clone(),
                    InnerFormSpec::new(self.fundamental_pair()?, &f.y)?,
                ))
            })
            .collect()
    }

    fn parameter_entry(&self, name: &str) -> Result<&FixtureParameter> {
        self.parameters
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::validation(format!("no parameter named '{name}'")))
    }

    pub fn l_parameter(&self, name: &str) -> Result<LParamData> {
        let e = self.parameter_entry(name)?;
        if e.kind != ParamKind::L {
            return Err(Error::validation(format!("'{name}' is not an L-parameter")));
        }
        self.build_l(e)
    }

    pub fn arthur_parameter(&self, name: &str) -> Result<AParamData> {
        let e = self.parameter_entry(name)?;
        if e.kind != ParamKind::Arthur {
            return Err(Error::validation(format!(
                "'{name}' is not an Arthur parameter"
            )));
        }
        self.build_arthur(e)
    }

    fn build_l(&self, e: &FixtureParameter) -> Result<LParamData> {
        let pair = self.fundamental_pair()?;
        let dual = pair.torus.rd.dual_datum();
        let sigma_t = pair.torus.sigma.transpose();
        LParamData::new(dual, sigma_t, &e.mu, &e.lambda)
    }

    fn build_arthur(&self, e: &FixtureParameter) -> Result<AParamData> {
        let pair = self.fundamental_pair()?;
        let dual = pair.torus.rd.dual_datum();
        let sigma_t = pair.torus.sigma.transpose();
        AParamData::new(dual, &e.levi, sigma_t, &e.mu, &e.lambda)
    }

    /// All L-parameters by name, built and validated.
    pub fn l_parameters(&self) -> Result<Vec<(String, LParamData)>> {
        self.parameters
            .iter()
            .filter(|e| e.kind == ParamKind::L)
            .map(|e| Ok((e.name.clone(), self.build_l(e)?)))
            .collect()
    }

    /// All Arthur parameters by name, built and validated.
    pub fn arthur_parameters(&self) -> Result<Vec<(String, AParamData)>> {
        self.parameters
            .iter()
            .filter(|e| e.kind == ParamKind::Arthur)
            .map(|e| Ok((e.name.clone(), self.build_arthur(e)?)))
            .collect()
    }
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

fn lp(name: &str, mu: Vec<Rat>, lambda: Vec<Rat>) -> FixtureParameter {
    FixtureParameter { name: name.into(), kind: ParamKind::L, levi: vec![], mu, lambda }
}

fn ap(name: &str, levi: Vec<usize>, mu: Vec<Rat>, lambda: Vec<Rat>) -> FixtureParameter {
    FixtureParameter { name: name.into(), kind: ParamKind::Arthur, levi, mu, lambda }
}

fn form(name: &str, y: Vec<Rat>) -> FixtureForm {
    FixtureForm { name: name.into(), y }
}

/// The shipped fixtures: each entry builds without error and every listed
/// form and parameter validates.
pub fn builtin_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "sl2".into(),
            cartan_type: "A1".into(),
            isogeny: Isogeny::SimplyConnected,
            inner_class: vec![0],
            forms: vec![form("split", ints(&[0])), form("compact", vec![r(1, 4)])],
            parameters: vec![
                lp("ds", ints(&[1]), ints(&[0])),
                lp("degenerate", ints(&[0]), vec![r(1, 2)]),
                ap("arthur_full", vec![0], ints(&[0]), ints(&[0])),
                ap("arthur_torus", vec![], ints(&[1]), ints(&[0])),
            ],
        },
        Fixture {
            name: "pgl2".into(),
            cartan_type: "A1".into(),
            isogeny: Isogeny::Adjoint,
            inner_class: vec![0],
            forms: vec![form("split", ints(&[0]))],
            parameters: vec![
                lp("ds", vec![r(1, 2)], ints(&[0])),
                lp("ds2", vec![r(3, 2)], ints(&[0])),
            ],
        },
        Fixture {
            name: "sl2xsl2".into(),
            cartan_type: "A1xA1".into(),
            isogeny: Isogeny::SimplyConnected,
            inner_class: vec![0, 1],
            forms: vec![form("split", ints(&[0, 0]))],
            parameters: vec![
                lp("ds", ints(&[1, 1]), ints(&[0, 0])),
                lp("degenerate", ints(&[0, 0]), vec![r(1, 2), r(1, 2)]),
                ap("arthur_mixed", vec![0], ints(&[0, 1]), ints(&[0, 0])),
            ],
        },
        Fixture {
            name: "pgl2xpgl2".into(),
            cartan_type: "A1xA1".into(),
            isogeny: Isogeny::Adjoint,
            inner_class: vec![0, 1],
            forms: vec![form("split", ints(&[0, 0]))],
            parameters: vec![lp("ds", vec![r(1, 2), r(1, 2)], ints(&[0, 0]))],
        },
        Fixture {
            name: "sl2c".into(),
            cartan_type: "A1xA1".into(),
            isogeny: Isogeny::SimplyConnected,
            inner_class: vec![1, 0],
            forms: vec![form("qs", ints(&[0, 0]))],
            parameters: vec![lp("ds", ints(&[1, 1]), ints(&[0, 0]))],
        },
        Fixture {
            name: "sl3".into(),
            cartan_type: "A2".into(),
            isogeny: Isogeny::SimplyConnected,
            inner_class: vec![1, 0],
            forms: vec![form("qs", ints(&[0, 0]))],
            parameters: vec![
                lp("ds", ints(&[1, 1]), ints(&[0, 0])),
                lp("degenerate", ints(&[0, 0]), ints(&[0, 0])),
            ],
        },
        Fixture {
            name: "pgl3".into(),
            cartan_type: "A2".into(),
            isogeny: Isogeny::Adjoint,
            inner_class: vec![1, 0],
            forms: vec![form("qs", ints(&[0, 0]))],
            parameters: vec![
                lp("ds", ints(&[1, 1]), ints(&[0, 0])),
                lp("degenerate", ints(&[0, 0]), ints(&[0, 0])),
            ],
        },
        Fixture {
            name: "spin5".into(),
            cartan_type: "B2".into(),
            isogeny: Isogeny::SimplyConnected,
            inner_class: vec![0, 1],
            forms: vec![form("split", ints(&[0, 0]))],
            parameters: vec![
                lp("ds", ints(&[1, 1]), ints(&[0, 0])),
                lp("degenerate", ints(&[0, 0]), ints(&[0, 0])),
            ],
        },
        Fixture {
            name: "so5".into(),
            cartan_type: "B2".into(),
            isogeny: Isogeny::Adjoint,
            inner_class: vec![0, 1],
            forms: vec![form("split", ints(&[0, 0]))],
            parameters: vec![lp("ds", vec![r(3, 2), r(2, 1)], ints(&[0, 0]))],
        },
        Fixture {
            name: "sp4".into(),
            cartan_type: "C2".into(),
            isogeny: Isogeny::SimplyConnected,
            inner_class: vec![0, 1],
            forms: vec![form("split", ints(&[0, 0]))],
            parameters: vec![
                lp("ds", ints(&[2, 1]), ints(&[0, 0])),
                lp("degenerate", ints(&[0, 0]), ints(&[0, 0])),
                ap("arthur_a1", vec![1], ints(&[2, 0]), ints(&[0, 0])),
                ap("arthur_full", vec![0, 1], ints(&[0, 0]), ints(&[0, 0])),
            ],
        },
    ]
}

pub fn fixture(name: &str) -> Result<Fixture> {
    builtin_fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::validation(format!("no fixture named '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_build_and_validate() {
        for f in builtin_fixtures() {
            let rd = f.root_datum().unwrap();
            assert_eq!(rd.rank, f.inner_class.len(), "{}", f.name);
            for (name, _) in f.form_specs().unwrap() {
                let _ = f.form(&name).unwrap();
            }
            let ls = f.l_parameters().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            let arths = f
                .arthur_parameters()
                .unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert_eq!(
                ls.len() + arths.len(),
                f.parameters.len(),
                "{}",
                f.name
            );
        }
    }

    #[test]
    fn fixture_lookup() {
        let f = fixture("sl2").unwrap();
        assert_eq!(f.cartan_type, "A1");
        assert!(f.form("compact").unwrap().y_eta[0] == Rat::new(1, 4));
        assert!(f.form("missing").is_err());
        assert!(f.l_parameter("arthur_full").is_err());
        assert!(f.arthur_parameter("ds").is_err());
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn fixture_names_unique() {
        let fs = builtin_fixtures();
        for (i, a) in fs.iter().enumerate() {
            for b in &fs[i + 1..] {
                assert_ne!(a.name, b.name);
            }
        }
    }
}
