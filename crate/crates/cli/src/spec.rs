//! JSON spec files describing a group with its inner class, forms, and
//! parameters. All rationals are "p/q" strings; maps are ordered by name so
//! emitted output is deterministic.

use std::collections::BTreeMap;

use endo_core::fixtures::{Fixture, FixtureForm, FixtureParameter, ParamKind};
use endo_core::linalg::{IMat, Rat};
use endo_core::rootdata::Isogeny;
use endo_core::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupSpecFile {
    pub cartan_type: String,
    pub isogeny: IsogenySpec,
    pub inner_class: Vec<usize>,
    #[serde(default)]
    pub forms: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub parameters: BTreeMap<String, ParameterSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum IsogenySpec {
    Name(String),
    Basis(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ParameterSpec {
    pub kind: String,
    #[serde(default)]
    pub levi: Vec<usize>,
    pub mu: Vec<String>,
    pub lambda: Vec<String>,
}

pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: i64 = num
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad rational '{s}'")))?;
    let d: i64 = den
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad rational '{s}'")))?;
    if d == 0 {
        return Err(Error::parse(format!("zero denominator in '{s}'")));
    }
    Ok(Rat::new(n, d))
}

pub fn render_rat(r: &Rat) -> String {
    if r.denom() == &1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat_vec(v: &[String]) -> Result<Vec<Rat>, Error> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn render_rat_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(render_rat).collect()
}

/// Parse a command-line vector such as "1/2,0" into rationals.
pub fn parse_vector_arg(s: &str) -> Result<Vec<Rat>, Error> {
    s.split(',').map(parse_rat).collect()
}

impl GroupSpecFile {
    pub fn to_fixture(&self, name: &str) -> Result<Fixture, Error> {
        let isogeny = match &self.isogeny {
            IsogenySpec::Name(n) => match n.as_str() {
                "simply_connected" => Isogeny::SimplyConnected,
                "adjoint" => Isogeny::Adjoint,
                other => {
                    return Err(Error::parse(format!("unknown isogeny '{other}'")))
                }
            },
            IsogenySpec::Basis(rows) => Isogeny::Basis(IMat::from_rows(rows)),
        };
        let forms = self
            .forms
            .iter()
            .map(|(fname, y)| {
                Ok(FixtureForm { name: fname.clone(), y: parse_rat_vec(y)? })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let parameters = self
            .parameters
            .iter()
            .map(|(pname, p)| {
                let kind = match p.kind.as_str() {
                    "L" => ParamKind::L,
                    "Arthur" => ParamKind::Arthur,
                    other => {
                        return Err(Error::parse(format!(
                            "unknown parameter kind '{other}'"
                        )))
                    }
                };
                Ok(FixtureParameter {
                    name: pname.clone(),
                    kind,
                    levi: p.levi.clone(),
                    mu: parse_rat_vec(&p.mu)?,
                    lambda: parse_rat_vec(&p.lambda)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Fixture {
            name: name.to_string(),
            cartan_type: self.cartan_type.clone(),
            isogeny,
            inner_class: self.inner_class.clone(),
            forms,
            parameters,
        })
    }

    pub fn from_fixture(f: &Fixture) -> GroupSpecFile {
        let isogeny = match &f.isogeny {
            Isogeny::SimplyConnected => IsogenySpec::Name("simply_connected".into()),
            Isogeny::Adjoint => IsogenySpec::Name("adjoint".into()),
            Isogeny::Basis(m) => IsogenySpec::Basis(
                (0..m.rows)
                    .map(|i| (0..m.cols).map(|j| m.get(i, j)).collect())
                    .collect(),
            ),
        };
        GroupSpecFile {
            cartan_type: f.cartan_type.clone(),
            isogeny,
            inner_class: f.inner_class.clone(),
            forms: f
                .forms
                .iter()
                .map(|fm| (fm.name.clone(), render_rat_vec(&fm.y)))
                .collect(),
            parameters: f
                .parameters
                .iter()
                .map(|p| {
                    (
                        p.name.clone(),
                        ParameterSpec {
                            kind: match p.kind {
                                ParamKind::L => "L".into(),
                                ParamKind::Arthur => "Arthur".into(),
                            },
                            levi: p.levi.clone(),
                            mu: render_rat_vec(&p.mu),
                            lambda: render_rat_vec(&p.lambda),
                        },
                    )
                })
                .collect(),
        }
    }
}

pub fn load_spec(path: &std::path::Path) -> Result<(String, Fixture), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    let spec: GroupSpecFile = serde_json::from_str(&text)
        .map_err(|e| Error::parse(format!("bad spec file {}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spec".into());
    let fixture = spec.to_fixture(&name)?;
    Ok((name, fixture))
}
