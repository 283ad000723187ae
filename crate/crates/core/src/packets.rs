//! Packet enumeration across inner forms at the cohomological level:
//! discrete-series and limit packets with zero detection, totally degenerate
//! packets, Arthur packets, and the invariants inv(π), inv(π,π′), ε_M(π).
//!
//! A cocycle u = e^{2πiy} of a torus is stored by its exponent y; the
//! dictionary y ↦ (1−σ)y identifies its class with a Tate class in
//! ker(1+σ)/(1−σ)X_*, and coboundaries are exactly (1+σ)ℚⁿ + ℤⁿ.

use crate::aparam::{AParamData, Regularity};
use crate::cohomology::{
    image_subgroup, sub_torus, tate_h1, u_torus, Subgroup, TateClass, UTorus,
};
use crate::error::{Error, Result};
use crate::linalg::{
    dot_iq, is_int_vec, qvec, qvec_add, qvec_neg, qvec_scale, qvec_sub, smith, IMat, Lattice,
    Rat,
};
use crate::lparam::LParamData;
use crate::realform::{whittaker_grading, FundamentalPair, Grading, RealTorus};
use crate::rootdata::{BasedRootDatum, LeviSubset};
use num::Zero;

fn one_minus_apply(sigma: &IMat, y: &[Rat]) -> Vec<Rat> {
    qvec_sub(y, &sigma.mul_qvec(y))
}

fn to_int(v: &[Rat]) -> Result<Vec<i64>> {
    if !is_int_vec(v) {
        return Err(Error::internal("expected an integral vector"));
    }
    Ok(v.iter().map(|x| *x.numer()).collect())
}

/// Simply connected cover of a semisimple datum, realized on the coroot
/// lattice: returns the covering datum and the inclusion X_*(T_sc) → X_*(T)
/// whose columns are the simple coroots.
pub fn sc_realization(rd: &BasedRootDatum) -> Result<(BasedRootDatum, IMat)> {
    if rd.n_simples() != rd.rank {
        return Err(Error::validation("cover needs a semisimple datum"));
    }
    let cols: Vec<Vec<i64>> = (0..rd.rank).map(|k| rd.simple_coroot(k).to_vec()).collect();
    let c = IMat::from_cols(&cols);
    let cinv = c
        .to_qmat()
        .inverse()
        .ok_or_else(|| Error::validation("simple coroots are not independent"))?;
    let ct = c.transpose();
    let roots: Vec<Vec<i64>> = rd.roots.iter().map(|r| ct.mul_vec(r)).collect();
    let mut coroots = Vec::new();
    for cr in &rd.coroots {
        coroots.push(to_int(&cinv.mul_vec(&qvec(cr)))?);
    }
    let sc = BasedRootDatum::from_parts(rd.rank, roots, coroots, rd.simple_indices.clone())?;
    Ok((sc, c))
}

/// An inner form of the group attached to a fundamental pair: the base
/// quasi-split data plus the exponent of the twisting cochain u_η(σ), carried
/// in simply connected coordinates.
#[derive(Clone, Debug)]
pub struct InnerFormSpec {
    pub pair: FundamentalPair,
    /// The covering torus T_sc with the induced involution.
    pub sc_torus: RealTorus,
    /// Inclusion X_*(T_sc) → X_*(T); columns are the simple coroots.
    pub incl: IMat,
    /// Exponent of u_η(σ) in T_sc coordinates.
    pub y_eta: Vec<Rat>,
}

impl InnerFormSpec {
    pub fn new(pair: FundamentalPair, y_eta: &[Rat]) -> Result<InnerFormSpec> {
        let rd = &pair.torus.rd;
        if y_eta.len() != rd.rank {
            return Err(Error::validation("twist exponent has wrong length"));
        }
        let (sc_rd, c) = sc_realization(rd)?;
        // σ_sc = C⁻¹ σ C; integral because σ permutes the coroots.
        let cinv = c
            .to_qmat()
            .inverse()
            .ok_or_else(|| Error::internal("inclusion singular"))?;
        let mut sigma_sc = IMat::zero(rd.rank, rd.rank);
        for j in 0..rd.rank {
            let img = to_int(&cinv.mul_vec(&qvec(&pair.torus.sigma.mul_vec(&c.col(j)))))?;
            for i in 0..rd.rank {
                sigma_sc.set(i, j, img[i]);
            }
        }
        let sc_torus = RealTorus::new(sc_rd, sigma_sc)?;
        // The coboundary ∂u_η must be central: every root of the cover pairs
        // integrally with (1−σ_sc)y_η.
        let d = one_minus_apply(&sc_torus.sigma, y_eta);
        for r in &sc_torus.rd.roots {
            if dot_iq(r, &d).denom() != &1 {
                return Err(Error::validation("u_eta does not have a central coboundary"));
            }
        }
        Ok(InnerFormSpec { pair, sc_torus, incl: c, y_eta: y_eta.to_vec() })
    }

    pub fn quasi_split(pair: FundamentalPair) -> Result<InnerFormSpec> {
        let n = pair.torus.rd.rank;
        InnerFormSpec::new(pair, &vec![Rat::zero(); n])
    }

    /// u_η may be chosen as a genuine cocycle: (1−σ_sc)y_η is integral.
    pub fn is_quasi_split_type(&self) -> bool {
        is_int_vec(&one_minus_apply(&self.sc_torus.sigma, &self.y_eta))
    }

    /// T-coordinates of an exponent given on T_sc.
    pub fn to_ambient(&self, y: &[Rat]) -> Vec<Rat> {
        self.incl.to_qmat().mul_vec(y)
    }
}

/// Representatives of {y ∈ ℚⁿ : A·y ∈ ℤ^m} modulo ℤⁿ + ker_ℚ(A), by Smith
/// normal form. Kernel directions never affect classes, zero tests, or
/// gradings in the callers, so one representative per coset is exact.
fn torsion_solutions(a: &IMat) -> Vec<Vec<Rat>> {
    let (_, d, q) = smith(a);
    let n = a.cols;
    let mut zs: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]];
    for i in 0..n.min(a.rows) {
        let di = d.get(i, i).abs();
        if di <= 1 {
            continue;
        }
        let mut next = Vec::with_capacity(zs.len() * di as usize);
        for z in &zs {
            for k in 0..di {
                let mut w = z.clone();
                w[i] = Rat::new(k, di);
                next.push(w);
            }
        }
        zs = next;
    }
    let qq = q.to_qmat();
    zs.into_iter().map(|z| qq.mul_vec(&z)).collect()
}

/// A packet member, carried through its twisting cocycle.
#[derive(Clone, Debug)]
pub struct PacketMember {
    /// Exponent of u_π(σ) in T_sc coordinates.
    pub cochain: Vec<Rat>,
    /// Class of u_π(σ) in H¹(Γ, T_sc).
    pub cls: TateClass,
    /// Character data is nonzero: the twist keeps every M-simple root graded
    /// as in the Whittaker base.
    pub nonzero: bool,
    /// inv(π) in H¹(Γ,T); for Arthur members a representative of the coset
    /// modulo E_{M*}(T).
    pub inv: TateClass,
    /// ε_M(π), the parity sign of the M-restricted grading; +1 for tempered
    /// members.
    pub epsilon: i64,
}

fn check_parameter_matches(
    dual_datum: &BasedRootDatum,
    sigma_t: &IMat,
    form: &InnerFormSpec,
) -> Result<()> {
    let dual = form.pair.torus.rd.dual_datum();
    if dual != *dual_datum {
        return Err(Error::validation("parameter datum is not the dual of the form's"));
    }
    if *sigma_t != form.pair.torus.sigma.transpose() {
        return Err(Error::validation("parameter involution does not match the form"));
    }
    Ok(())
}

/// Candidate twisting exponents y_η + y_z, y_z running over the classes of
/// cocycles valued in the center of the Levi's cover, each tagged with the
/// nonzero test: every M-simple root must pair integrally with the exponent.
fn levi_center_candidates(
    form: &InnerFormSpec,
    levi: &LeviSubset,
) -> Vec<(Vec<Rat>, bool)> {
    let sc = &form.sc_torus;
    let n = sc.rd.rank;
    let mut rows: Vec<Vec<i64>> = levi
        .root_indices
        .iter()
        .map(|&i| sc.rd.roots[i].clone())
        .collect();
    let mut one_minus = IMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            one_minus.set(i, j, one_minus.get(i, j) - sc.sigma.get(i, j));
        }
    }
    for i in 0..n {
        rows.push(one_minus.row(i));
    }
    let a = IMat::from_rows(&rows);
    torsion_solutions(&a)
        .into_iter()
        .map(|y_z| {
            let y = qvec_add(&form.y_eta, &y_z);
            let nz = levi
                .simple_subset
                .iter()
                .all(|&k| dot_iq(sc.rd.simple_root(k), &y).denom() == &1);
            (y, nz)
        })
        .collect()
}

/// Enumerate the packet of an s-elliptic parameter on an inner form,
/// keeping members whose character data vanishes (nonzero = false) when
/// `include_zero` is set.
pub fn enumerate_l_packet_full(
    p: &LParamData,
    form: &InnerFormSpec,
    include_zero: bool,
) -> Result<Vec<PacketMember>> {
    check_parameter_matches(&p.dual_datum, &p.sigma_t, form)?;
    let (levi_dual, _) = p.c_levi()?;
    let rd_g = &form.pair.torus.rd;
    let levi = rd_g.levi(&levi_dual.simple_subset);
    let candidates = levi_center_candidates(form, &levi);
    if !form.is_quasi_split_type() {
        if candidates.iter().any(|(_, nz)| *nz) {
            return Err(Error::validation(
                "form is not of quasi-split type; relative enumeration required",
            ));
        }
        return Ok(Vec::new());
    }
    let h1t = tate_h1(&form.pair.torus);
    let h1sc = tate_h1(&form.sc_torus);
    let mut members: Vec<PacketMember> = Vec::new();
    for (y, nz) in candidates {
        let d_sc = to_int(&one_minus_apply(&form.sc_torus.sigma, &y))?;
        let cls = h1sc.class_of(&d_sc)?;
        let inv = h1t.class_of(&form.incl.mul_vec(&d_sc))?;
        if let Some(m) = members.iter().find(|m| h1t.classes_equal(&m.inv, &inv)) {
            if m.nonzero != nz {
                return Err(Error::internal("zero test is not class-invariant"));
            }
        } else {
            members.push(PacketMember { cochain: y, cls, nonzero: nz, inv, epsilon: 1 });
        }
    }
    if !include_zero {
        members.retain(|m| m.nonzero);
    }
    members.sort_by(|a, b| a.inv.representative.cmp(&b.inv.representative));
    Ok(members)
}

/// Default enumeration: zero members filtered out.
pub fn enumerate_l_packet(p: &LParamData, form: &InnerFormSpec) -> Result<Vec<PacketMember>> {
    enumerate_l_packet_full(p, form, false)
}

/// Size of the image of the simply connected center's cohomology, measured
/// two ways: class count inside H¹(Γ,Z) and class count after the (injective)
/// push into H¹(Γ,T). Totally degenerate packets on the quasi-split form have
/// exactly this many members.
pub fn center_image_sizes(form: &InnerFormSpec) -> Result<(usize, usize)> {
    let rd = &form.pair.torus.rd;
    let n = rd.rank;
    let full = rd.levi(&(0..rd.n_simples()).collect::<Vec<_>>());
    let base = InnerFormSpec::quasi_split(form.pair.clone())?;
    let cocycles: Vec<Vec<Rat>> = levi_center_candidates(&base, &full)
        .into_iter()
        .map(|(y, _)| y)
        .collect();
    // Class equality in H¹(Γ,Z): difference in ℤⁿ + (1+σ)·(dual of the root
    // lattice).
    let r = IMat::from_rows(&(0..rd.n_simples()).map(|k| rd.simple_root(k).to_vec()).collect::<Vec<_>>());
    let rinv = r
        .to_qmat()
        .inverse()
        .ok_or_else(|| Error::validation("simple roots are not independent"))?;
    let mut one_plus = IMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            one_plus.set(i, j, one_plus.get(i, j) + form.pair.torus.sigma.get(i, j));
        }
    }
    let opq = one_plus.to_qmat();
    let mut cols: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::from_integer(1);
            e
        })
        .collect();
    for j in 0..n {
        cols.push(opq.mul_vec(&rinv.col(j)));
    }
    let lz = Lattice::from_qcols(n, cols);
    let h1t = tate_h1(&form.pair.torus);
    let mut z_reps: Vec<Vec<Rat>> = Vec::new();
    let mut t_classes: Vec<TateClass> = Vec::new();
    for y in cocycles {
        let y_t = form.to_ambient(&y);
        if !z_reps.iter().any(|r| lz.contains(&qvec_sub(&y_t, r))) {
            z_reps.push(y_t.clone());
        }
        let cls = h1t.class_of(&to_int(&one_minus_apply(&form.pair.torus.sigma, &y_t))?)?;
        if !t_classes.iter().any(|c| h1t.classes_equal(c, &cls)) {
            t_classes.push(cls);
        }
    }
    Ok((z_reps.len(), t_classes.len()))
}

/// The relative invariant inv(π,π′) as a class over U = T×T/{(z⁻¹,z)}.
#[derive(Clone, Debug)]
pub struct RelativeInvariant {
    pub u: UTorus,
    pub cls: TateClass,
}

/// The torus U(T,T) with the root lattice as annihilator of the center.
pub fn u_for_torus(t: &RealTorus) -> Result<UTorus> {
    if t.rd.n_simples() != t.rd.rank {
        return Err(Error::validation("U construction needs a semisimple datum"));
    }
    let cols: Vec<Vec<i64>> = (0..t.rd.n_simples()).map(|k| t.rd.simple_root(k).to_vec()).collect();
    u_torus(t, &cols)
}

/// inv(π,π′): the class of the pair (u_π⁻¹, u_π′) pushed to U. Defined for
/// any two forms in one extended group (shared coboundary), including forms
/// that are not of quasi-split type.
pub fn inv_relative(
    form1: &InnerFormSpec,
    m1: &PacketMember,
    form2: &InnerFormSpec,
    m2: &PacketMember,
) -> Result<RelativeInvariant> {
    if form1.pair.torus != form2.pair.torus {
        return Err(Error::validation("forms are not in one extended group"));
    }
    let t = &form1.pair.torus;
    let y1 = form1.to_ambient(&m1.cochain);
    let y2 = form2.to_ambient(&m2.cochain);
    let d1 = one_minus_apply(&t.sigma, &y1);
    let d2 = one_minus_apply(&t.sigma, &y2);
    if !is_int_vec(&qvec_sub(&d2, &d1)) {
        return Err(Error::validation("coboundary mismatch between the members"));
    }
    let u = u_for_torus(t)?;
    let mut amb = qvec_neg(&y1);
    amb.extend(y2);
    let e_u = u.cochar_from_ambient(&amb);
    let rep = one_minus_apply(&u.torus.sigma, &e_u);
    if !is_int_vec(&rep) {
        return Err(Error::validation("pair is not a cocycle in U"));
    }
    let h1u = tate_h1(&u.torus);
    let cls = h1u.class_of(&to_int(&rep)?)?;
    Ok(RelativeInvariant { u, cls })
}

/// Quasi-split-type factorization: the image of (inv(π)⁻¹, inv(π′)) under the
/// evident map X_*(T)² → X_*(U).
pub fn relative_from_absolute(
    u: &UTorus,
    inv1: &TateClass,
    inv2: &TateClass,
) -> Result<TateClass> {
    let mut amb: Vec<Rat> = inv1.representative.iter().map(|x| Rat::from_integer(-x)).collect();
    amb.extend(inv2.representative.iter().map(|x| Rat::from_integer(*x)));
    let rep = to_int(&u.cochar_from_ambient(&amb))?;
    tate_h1(&u.torus).class_of(&rep)
}

/// Noncompact-positive-root count of a grading restricted to a Levi
/// subsystem, optionally shifted by a twist exponent in datum coordinates.
fn q_levi(g: &Grading, levi: &LeviSubset, twist: Option<&[Rat]>) -> Result<usize> {
    let rd = &g.pair.torus.rd;
    let mut q = 0usize;
    for &i in &levi.root_indices {
        if !rd.is_positive(i) {
            continue;
        }
        let v = g
            .value(i)
            .ok_or_else(|| Error::validation("Levi root is not imaginary"))?;
        let shift = match twist {
            None => 0,
            Some(u) => {
                let p = dot_iq(&rd.roots[i], &qvec_scale(u, Rat::from_integer(2)));
                if p.denom() != &1 {
                    return Err(Error::validation("twist does not grade the Levi"));
                }
                *p.numer()
            }
        };
        if (v as i64 + shift).rem_euclid(2) == 1 {
            q += 1;
        }
    }
    Ok(q)
}

/// ε_M(π) = (−1)^{q(M_twisted) − q(M_base)}: the parity sign comparing the
/// member's grading on the Levi with the Whittaker base grading.
pub fn epsilon_m(
    form: &InnerFormSpec,
    levi_simples: &[usize],
    cochain: &[Rat],
) -> Result<i64> {
    let rd = &form.pair.torus.rd;
    let levi = rd.levi(levi_simples);
    let base = whittaker_grading(&form.pair);
    let y_t = form.to_ambient(cochain);
    let q0 = q_levi(&base, &levi, None)?;
    let q1 = q_levi(&base, &levi, Some(&y_t))?;
    Ok(if (q1 as i64 - q0 as i64).rem_euclid(2) == 0 { 1 } else { -1 })
}

/// The subgroup E_{M*}(T): image of the cohomology of the Levi's covering
/// torus (cocharacters = the Levi's coroot lattice) in H¹(Γ,T).
pub fn levi_image_subgroup(t: &RealTorus, levi_simples: &[usize]) -> Result<Subgroup> {
    if levi_simples.is_empty() {
        return Ok(Subgroup { classes: vec![TateClass::zero(t.rd.rank)] });
    }
    let cols: Vec<Vec<i64>> = levi_simples.iter().map(|&k| t.rd.simple_coroot(k).to_vec()).collect();
    let (tsub, incl) = sub_torus(t, &cols)?;
    image_subgroup(&incl, &tsub, t)
}

/// Enumerate the Arthur packet of a normalized, regular, elliptic parameter:
/// one member per coset of E_{M*}(T) in the invariants of the attached
/// discrete-series packet, each carrying ε_M.
pub fn enumerate_arthur_packet(
    a: &AParamData,
    form: &InnerFormSpec,
) -> Result<Vec<PacketMember>> {
    if !a.is_normalized() {
        return Err(Error::validation("parameter must be normalized"));
    }
    if a.regularity_test()? != Regularity::Regular {
        return Err(Error::validation("parameter must be regular"));
    }
    if !a.is_elliptic() {
        return Err(Error::validation("parameter must be elliptic"));
    }
    if !form.is_quasi_split_type() {
        return Err(Error::validation(
            "form is not of quasi-split type; relative enumeration required",
        ));
    }
    let phi = a.attached_selliptic()?;
    let ds = enumerate_l_packet(&phi, form)?;
    let t = &form.pair.torus;
    let h1t = tate_h1(t);
    let em = levi_image_subgroup(t, &a.levi.simple_subset)?;
    let mut out: Vec<PacketMember> = Vec::new();
    for m in &ds {
        if out
            .iter()
            .any(|r| em.contains(&h1t, &h1t.add_classes(&r.inv, &m.inv)))
        {
            continue;
        }
        let mut mm = m.clone();
        mm.epsilon = epsilon_m(form, &a.levi.simple_subset, &mm.cochain)?;
        out.push(mm);
    }
    Ok(out)
}
