//! Subcommand implementations. All output is deterministic: maps iterate in
//! name order and packet members arrive sorted from the core library.

use endo_core::aparam::Regularity;
use endo_core::cohomology::{tate_h1, DualInvariant};
use endo_core::fixtures::{Fixture, ParamKind};
use endo_core::linalg::Rat;
use endo_core::packets::{
    center_image_sizes, enumerate_arthur_packet, enumerate_l_packet, InnerFormSpec,
    PacketMember,
};
use endo_core::transfer::{
    check_related, delta_arthur, delta_wh, endoscopic_from_s, related_pair,
};
use endo_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::render::{pairing_text, render_pairing, DeltaOutput};
use crate::spec::{render_rat_vec, render_rat};

fn required<'a, T>(opt: &'a Option<T>, what: &str) -> Result<&'a T> {
    opt.as_ref()
        .ok_or_else(|| Error::validation(format!("--{what} is required")))
}

pub fn check(fixture: &Fixture) -> Result<String> {
    let mut out = String::new();
    let rd = fixture.root_datum()?;
    out.push_str(&format!(
        "group {}: type {}, rank {}, {} roots\n",
        fixture.name,
        fixture.cartan_type,
        rd.rank,
        rd.roots.len()
    ));
    for (name, form) in fixture.form_specs()? {
        out.push_str(&format!(
            "form {name}: quasi-split-type = {}\n",
            form.is_quasi_split_type()
        ));
    }
    for entry in &fixture.parameters {
        match entry.kind {
            ParamKind::L => {
                let p = fixture.l_parameter(&entry.name)?;
                out.push_str(&format!(
                    "parameter {}: L, classification = {:?}\n",
                    entry.name,
                    p.classify()
                ));
            }
            ParamKind::Arthur => {
                let a = fixture.arthur_parameter(&entry.name)?;
                let reg = match a.regularity_test()? {
                    Regularity::Regular => "regular".to_string(),
                    Regularity::Singular { witnesses } => {
                        format!("singular (witnesses {witnesses:?})")
                    }
                };
                out.push_str(&format!(
                    "parameter {}: Arthur, normalized = {}, {}, elliptic = {}\n",
                    entry.name,
                    a.is_normalized(),
                    reg,
                    a.is_elliptic()
                ));
            }
        }
    }
    Ok(out)
}

pub fn cohomology(fixture: &Fixture, form_filter: Option<&str>) -> Result<String> {
    let mut out = String::new();
    let pair = fixture.fundamental_pair()?;
    let h1t = tate_h1(&pair.torus);
    out.push_str(&format!("H1(T): order {}\n", h1t.order()));
    let mut reps: Vec<Vec<i64>> = h1t
        .all_classes()
        .into_iter()
        .map(|c| c.representative)
        .collect();
    reps.sort();
    for r in &reps {
        out.push_str(&format!("  class {r:?}\n"));
    }
    for (name, form) in fixture.form_specs()? {
        if let Some(f) = form_filter {
            if f != name {
                continue;
            }
        }
        let h1sc = tate_h1(&form.sc_torus);
        out.push_str(&format!("form {name}: H1(T_sc) order {}\n", h1sc.order()));
        if form.is_quasi_split_type() {
            let (in_z, in_t) = center_image_sizes(&form)?;
            out.push_str(&format!(
                "form {name}: center image sizes |im in H1(Z)| = {in_z}, |im in H1(T)| = {in_t}\n"
            ));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MemberOutput {
    pub cochain: Vec<String>,
    pub inv: Vec<i64>,
    pub nonzero: bool,
    pub epsilon: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaOutput>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PacketOutput {
    pub group: String,
    pub form: String,
    pub parameter: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    pub members: Vec<MemberOutput>,
}

fn member_output(m: &PacketMember, delta: Option<DeltaOutput>) -> MemberOutput {
    MemberOutput {
        cochain: render_rat_vec(&m.cochain),
        inv: m.inv.representative.clone(),
        nonzero: m.nonzero,
        epsilon: m.epsilon,
        delta,
    }
}

fn invariant_from_arg(form: &InnerFormSpec, s: &[Rat]) -> Result<DualInvariant> {
    DualInvariant::new(form.pair.torus.clone(), s)
}

pub fn packet_output(
    fixture: &Fixture,
    form_name: &Option<String>,
    param_name: &Option<String>,
    s_arg: &Option<Vec<Rat>>,
) -> Result<PacketOutput> {
    let form_name = required(form_name, "form")?;
    let param_name = required(param_name, "param")?;
    let form = fixture.form(form_name)?;
    let entry = fixture
        .parameters
        .iter()
        .find(|p| p.name == *param_name)
        .ok_or_else(|| Error::validation(format!("no parameter named '{param_name}'")))?;
    let s = s_arg
        .as_ref()
        .map(|v| invariant_from_arg(&form, v))
        .transpose()?;
    let mut members = Vec::new();
    let kind = match entry.kind {
        ParamKind::L => {
            let p = fixture.l_parameter(param_name)?;
            for m in enumerate_l_packet(&p, &form)? {
                let delta = s
                    .as_ref()
                    .map(|s| delta_wh(&m, s).map(|v| render_pairing(&v)))
                    .transpose()?;
                members.push(member_output(&m, delta));
            }
            "L"
        }
        ParamKind::Arthur => {
            let a = fixture.arthur_parameter(param_name)?;
            let packet = enumerate_arthur_packet(&a, &form)?;
            let base = {
                let phi = a.attached_selliptic()?;
                enumerate_l_packet(&phi, &form)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::internal("tempered packet is empty"))?
            };
            for m in &packet {
                let delta = s
                    .as_ref()
                    .map(|s| {
                        delta_arthur(&a, &form, m, &base, s)
                            .map(|(_, absolute)| render_pairing(&absolute.total()))
                    })
                    .transpose()?;
                members.push(member_output(m, delta));
            }
            "Arthur"
        }
    };
    Ok(PacketOutput {
        group: fixture.name.clone(),
        form: form_name.clone(),
        parameter: param_name.clone(),
        kind: kind.into(),
        s: s_arg.as_ref().map(|v| render_rat_vec(v)),
        members,
    })
}

pub fn packet_text(out: &PacketOutput) -> String {
    let mut s = format!(
        "packet for parameter '{}' on form '{}' of {} ({} members)\n",
        out.parameter,
        out.form,
        out.group,
        out.members.len()
    );
    for (i, m) in out.members.iter().enumerate() {
        s.push_str(&format!(
            "  member {i}: cochain = ({}), inv = {:?}, nonzero = {}, epsilon = {:+}",
            m.cochain.join(", "),
            m.inv,
            m.nonzero,
            m.epsilon
        ));
        if let Some(d) = &m.delta {
            s.push_str(&format!(", delta = {} ({})", d.mod1, d.zeta));
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TransferOutput {
    pub group: String,
    pub form: String,
    pub parameter: String,
    pub s: Vec<String>,
    pub h_root_count: usize,
    pub total_root_count: usize,
    pub elliptic: bool,
    pub adams_johnson: bool,
    pub mu_star: Vec<String>,
    pub lambda_star: Vec<String>,
    pub related: bool,
    pub members: Vec<MemberOutput>,
}

pub fn transfer_output(
    fixture: &Fixture,
    form_name: &Option<String>,
    param_name: &Option<String>,
    s_arg: &Option<Vec<Rat>>,
) -> Result<TransferOutput> {
    let form_name = required(form_name, "form")?;
    let param_name = required(param_name, "param")?;
    let s_vec = required(s_arg, "s")?;
    let form = fixture.form(form_name)?;
    let entry = fixture
        .parameters
        .iter()
        .find(|p| p.name == *param_name)
        .ok_or_else(|| Error::validation(format!("no parameter named '{param_name}'")))?;
    let s = invariant_from_arg(&form, s_vec)?;
    // Arthur parameters transfer through their attached tempered parameter.
    let (p, arthur) = match entry.kind {
        ParamKind::L => (fixture.l_parameter(param_name)?, None),
        ParamKind::Arthur => {
            let a = fixture.arthur_parameter(param_name)?;
            (a.attached_selliptic()?, Some(a))
        }
    };
    let endo = endoscopic_from_s(&s, &p)?;
    let zero = vec![Rat::from_integer(0); p.dual_datum.rank];
    let rp = related_pair(&endo, &p, &zero)?;
    let related = check_related(&rp)?;
    let mut members = Vec::new();
    match &arthur {
        None => {
            for m in enumerate_l_packet(&p, &form)? {
                let delta = delta_wh(&m, &s)?;
                members.push(member_output(&m, Some(render_pairing(&delta))));
            }
        }
        Some(a) => {
            let packet = enumerate_arthur_packet(a, &form)?;
            let base = enumerate_l_packet(&p, &form)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::internal("tempered packet is empty"))?;
            for m in &packet {
                let (_, absolute) = delta_arthur(a, &form, m, &base, &s)?;
                members.push(member_output(m, Some(render_pairing(&absolute.total()))));
            }
        }
    }
    Ok(TransferOutput {
        group: fixture.name.clone(),
        form: form_name.clone(),
        parameter: param_name.clone(),
        s: render_rat_vec(s_vec),
        h_root_count: endo.h_root_indices.len(),
        total_root_count: p.dual_datum.roots.len(),
        elliptic: endo.elliptic,
        adams_johnson: endo.adams_johnson,
        mu_star: render_rat_vec(&rp.mu_star),
        lambda_star: render_rat_vec(&rp.lambda_star),
        related,
        members,
    })
}

pub fn transfer_text(out: &TransferOutput) -> String {
    let mut s = format!(
        "endoscopic datum for s = ({}) on {}:\n",
        out.s.join(", "),
        out.group
    );
    s.push_str(&format!(
        "  h-roots: {} of {}\n  elliptic: {}\n  adams_johnson: {}\n",
        out.h_root_count, out.total_root_count, out.elliptic, out.adams_johnson
    ));
    s.push_str(&format!(
        "related pair: mu* = ({}), lambda* = ({}), related = {}\n",
        out.mu_star.join(", "),
        out.lambda_star.join(", "),
        out.related
    ));
    s.push_str(&format!(
        "transfer factors for '{}' on form '{}':\n",
        out.parameter, out.form
    ));
    for (i, m) in out.members.iter().enumerate() {
        let d = m.delta.as_ref().expect("transfer members carry deltas");
        s.push_str(&format!(
            "  member {i}: inv = {:?}, epsilon = {:+}, delta = {}\n",
            m.inv, m.epsilon, d.mod1
        ));
    }
    s
}

/// Shared pretty-printer so emitted JSON is byte-stable.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::internal(format!("serialization failed: {e}")))
}

pub fn rat_summary(v: &[Rat]) -> String {
    format!("({})", v.iter().map(render_rat).collect::<Vec<_>>().join(", "))
}

pub fn pairing_summary(p: &endo_core::cohomology::PairingValue) -> String {
    pairing_text(p)
}
