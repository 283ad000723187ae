//! Property suite run by `endo verify`: canonical-lift cocycles, packet and
//! centralizer invariants, transfer-factor route agreement, and related-pair
//! arithmetic, over one spec file or a whole fixture directory.

use endo_core::aparam::Regularity;
use endo_core::cohomology::{tate_h1, DualInvariant};
use endo_core::fixtures::Fixture;
use endo_core::linalg::{qvec_scale, Rat};
use endo_core::lparam::{centralizer_report, iota_of, LParamClass};
use endo_core::packets::{center_image_sizes, enumerate_arthur_packet, enumerate_l_packet};
use endo_core::realform::RealTorus;
use endo_core::tits::verify_lemma_cocycle;
use endo_core::transfer::{
    central_char_identity, check_related, delta_arthur, delta_wh, endoscopic_from_s,
    related_pair,
};
use endo_core::{Error, Result};

fn two_torsion_invariants(t: &RealTorus) -> Vec<DualInvariant> {
    let n = t.rd.rank;
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let y: Vec<Rat> = (0..n)
            .map(|i| if mask & (1 << i) != 0 { Rat::new(1, 2) } else { Rat::from_integer(0) })
            .collect();
        if let Ok(s) = DualInvariant::new(t.clone(), &y) {
            out.push(s);
        }
    }
    out
}

fn fail(fixture: &str, what: &str, e: impl std::fmt::Display) -> Error {
    Error::validation(format!("{fixture}: {what}: {e}"))
}

pub fn verify_fixture(f: &Fixture) -> Result<String> {
    let rd = f.root_datum().map_err(|e| fail(&f.name, "root datum", e))?;
    let pair = f.fundamental_pair().map_err(|e| fail(&f.name, "inner class", e))?;
    let forms = f.form_specs().map_err(|e| fail(&f.name, "forms", e))?;
    let lparams = f.l_parameters().map_err(|e| fail(&f.name, "parameters", e))?;
    let aparams = f.arthur_parameters().map_err(|e| fail(&f.name, "parameters", e))?;

    // Canonical-lift cocycle identity over every stable standard Levi.
    let mut levis = 0usize;
    for mask in 0..(1u32 << rd.n_simples()) {
        let subset: Vec<usize> =
            (0..rd.n_simples()).filter(|i| mask & (1 << i) != 0).collect();
        let levi = rd.levi(&subset);
        match verify_lemma_cocycle(&rd, &levi, &pair.torus.sigma) {
            Ok(true) => levis += 1,
            Ok(false) => {
                return Err(Error::internal(format!(
                    "{}: cocycle identity fails for Levi {subset:?}",
                    f.name
                )))
            }
            Err(_) => continue, // not stable under the twisted involution
        }
    }

    let h1t = tate_h1(&pair.torus);
    let s_candidates = two_torsion_invariants(&pair.torus);
    let mut packets = 0usize;
    let mut factors = 0usize;
    let mut related = 0usize;

    for (pname, p) in &lparams {
        p.factor_through_levi()
            .map_err(|e| fail(&f.name, &format!("factoring {pname}"), e))?;
        let r = centralizer_report(p)
            .map_err(|e| fail(&f.name, &format!("centralizer of {pname}"), e))?;
        if r.s_bar_order != r.quotient_order * r.s_bar_m_order {
            return Err(Error::internal(format!(
                "{}: component-group factorization fails for {pname}",
                f.name
            )));
        }
        let mu0 = qvec_scale(&iota_of(&p.dual_datum), Rat::from_integer(2));
        p.translate(&mu0)
            .map_err(|e| fail(&f.name, &format!("translating {pname}"), e))?;

        for (fname, form) in &forms {
            if !form.is_quasi_split_type() {
                continue;
            }
            let members = enumerate_l_packet(p, form)
                .map_err(|e| fail(&f.name, &format!("packet {pname}/{fname}"), e))?;
            for (i, a) in members.iter().enumerate() {
                for b in members.iter().skip(i + 1) {
                    if h1t.classes_equal(&a.inv, &b.inv) {
                        return Err(Error::internal(format!(
                            "{}: duplicate invariants in packet {pname}/{fname}",
                            f.name
                        )));
                    }
                }
            }
            if p.classify() == LParamClass::TotallyDegenerate {
                let (_, in_t) = center_image_sizes(form)
                    .map_err(|e| fail(&f.name, "center image", e))?;
                if members.len() != in_t {
                    return Err(Error::internal(format!(
                        "{}: degenerate packet size {} differs from center image {in_t}",
                        f.name,
                        members.len()
                    )));
                }
            }
            packets += 1;
        }

        // Related-pair arithmetic for every invariant; skip pairs whose
        // endoscopic parameter is not well-positioned for the standard base.
        for s in &s_candidates {
            let endo = endoscopic_from_s(s, p)
                .map_err(|e| fail(&f.name, &format!("endoscopy for {pname}"), e))?;
            let zero = vec![Rat::from_integer(0); p.dual_datum.rank];
            let rp = match related_pair(&endo, p, &zero) {
                Ok(rp) => rp,
                Err(Error::Validation(_)) => continue,
                Err(e) => return Err(fail(&f.name, &format!("related pair {pname}"), e)),
            };
            if !check_related(&rp)
                .map_err(|e| fail(&f.name, &format!("relatedness {pname}"), e))?
            {
                return Err(Error::internal(format!(
                    "{}: shift fails relatedness for {pname}",
                    f.name
                )));
            }
            let zero_y = vec![Rat::from_integer(0); p.dual_datum.rank];
            if !central_char_identity(&rp, &zero_y, &zero_y, &zero_y, &zero_y)
                .map_err(|e| fail(&f.name, &format!("central identity {pname}"), e))?
            {
                return Err(Error::internal(format!(
                    "{}: central-character identity fails for {pname}",
                    f.name
                )));
            }
            related += 1;
        }
    }

    for (aname, a) in &aparams {
        if !a.is_normalized()
            || !matches!(a.regularity_test()?, Regularity::Regular)
            || !a.is_elliptic()
        {
            continue;
        }
        let phi = a
            .attached_selliptic()
            .map_err(|e| fail(&f.name, &format!("attached parameter of {aname}"), e))?;
        for (fname, form) in &forms {
            if !form.is_quasi_split_type() {
                continue;
            }
            let packet = enumerate_arthur_packet(a, form)
                .map_err(|e| fail(&f.name, &format!("Arthur packet {aname}/{fname}"), e))?;
            let ds = enumerate_l_packet(&phi, form)
                .map_err(|e| fail(&f.name, &format!("tempered packet {aname}/{fname}"), e))?;
            for s in &s_candidates {
                for m in &packet {
                    for mhat in &ds {
                        let (_, absolute) = match delta_arthur(a, form, m, mhat, s) {
                            Ok(v) => v,
                            Err(Error::Validation(_)) => continue, // s outside Z_M
                            Err(e) => {
                                return Err(fail(
                                    &f.name,
                                    &format!("factors {aname}/{fname}"),
                                    e,
                                ))
                            }
                        };
                        if a.levi.simple_subset.is_empty()
                            && absolute.total() != delta_wh(m, s)?
                        {
                            return Err(Error::internal(format!(
                                "{}: tempered degeneration fails for {aname}",
                                f.name
                            )));
                        }
                        factors += 1;
                    }
                }
            }
        }
    }

    Ok(format!(
        "ok {}: {} stable Levis, {} packets, {} transfer factors, {} related pairs",
        f.name, levis, packets, factors, related
    ))
}
