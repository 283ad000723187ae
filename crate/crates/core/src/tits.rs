//! The Tits extension of the Weyl group: canonical lifts n_w of Weyl
//! elements, exact multiplication through the torus 2-torsion, Galois twists
//! by based automorphisms, the extended-cocycle identity for Levi
//! subsystems, and the cochains ξ_M and t₂.

use crate::error::{Error, Result};
use crate::linalg::{is_int_vec, qvec_add, qvec_mod1, qvec_scale, qvec_sub, IMat, Rat};
use crate::rootdata::{BasedRootDatum, LeviSubset, WeylElement};
use num::Zero;

/// An element τ(t)·n_w of the Tits group: a 2-torsion torus part t (stored
/// as a half-integral cocharacter vector mod the lattice, entries in [0,1))
/// and a Weyl part with canonical lift n_w.
#[derive(Clone, Debug)]
pub struct TitsElement {
    pub torus_part: Vec<Rat>,
    pub weyl_part: WeylElement,
}

impl TitsElement {
    pub fn identity(rank: usize) -> TitsElement {
        TitsElement {
            torus_part: vec![Rat::zero(); rank],
            weyl_part: WeylElement::identity(rank),
        }
    }

    pub fn torus(t: &[Rat]) -> TitsElement {
        TitsElement {
            torus_part: qvec_mod1(t),
            weyl_part: WeylElement::identity(t.len()),
        }
    }

    pub fn equal(&self, other: &TitsElement) -> bool {
        self.torus_part == other.torus_part && self.weyl_part == other.weyl_part
    }

    pub fn is_identity(&self) -> bool {
        self.weyl_part.is_identity() && self.torus_part.iter().all(|x| x.is_zero())
    }
}

/// The canonical lift n_w along any reduced word (braid-independent).
pub fn canonical_rep(rd: &BasedRootDatum, w: &WeylElement) -> TitsElement {
    TitsElement {
        torus_part: vec![Rat::zero(); rd.rank],
        weyl_part: rd.canonicalize_weyl(w),
    }
}

/// Does ℓ(w·s_k) = ℓ(w) + 1? Equivalent to w(α_k) > 0.
fn length_adds(rd: &BasedRootDatum, w: &WeylElement, k: usize) -> bool {
    let img = w.mat_char.mul_vec(rd.simple_root(k));
    let idx = rd.root_index(&img).expect("Weyl image of a root is a root");
    rd.is_positive(idx)
}

/// Tits multiplication: peel the right factor's reduced word, applying
/// n_w·n_s = n_{ws} when length adds and n_w·n_s = τ(w′(α_s∨/2))·n_{w′}
/// (with w = w′s) when it drops; n_s² = α∨(−1).
pub fn mul(rd: &BasedRootDatum, a: &TitsElement, b: &TitsElement) -> TitsElement {
    // Move b's torus part left across n_{w_a}.
    let mut t = qvec_mod1(&qvec_add(
        &a.torus_part,
        &a.weyl_part.apply_cochar(&b.torus_part),
    ));
    let mut w = a.weyl_part.clone();
    for &k in &b.weyl_part.word {
        let adds = length_adds(rd, &w, k);
        let ws = w.compose(&rd.weyl_simple(k));
        if !adds {
            // w = w′·s_k: torus gains w′(α_k∨/2); w′ = w·s_k.
            let half: Vec<Rat> = rd
                .simple_coroot(k)
                .iter()
                .map(|&x| Rat::new(x, 2))
                .collect();
            t = qvec_mod1(&qvec_add(&t, &ws.apply_cochar(&half)));
        }
        w = ws;
    }
    TitsElement {
        torus_part: t,
        weyl_part: rd.canonicalize_weyl(&w),
    }
}

/// Inverse: with c = torus(n_w·n_{w⁻¹}), the inverse of τ(t)·n_w is
/// τ(w⁻¹(−t−c))·n_{w⁻¹}.
pub fn inverse(rd: &BasedRootDatum, a: &TitsElement) -> TitsElement {
    let winv = rd.canonicalize_weyl(&a.weyl_part.inverse());
    let c = mul(
        rd,
        &canonical_rep(rd, &a.weyl_part),
        &canonical_rep(rd, &winv),
    )
    .torus_part;
    let neg: Vec<Rat> = qvec_add(&a.torus_part, &c).iter().map(|x| -*x).collect();
    TitsElement {
        torus_part: qvec_mod1(&winv.apply_cochar(&neg)),
        weyl_part: winv,
    }
}

/// Product of canonical simple lifts along a word (for braid-invariance tests).
pub fn product_along_word(rd: &BasedRootDatum, word: &[usize]) -> TitsElement {
    let mut acc = TitsElement::identity(rd.rank);
    for &k in word {
        acc = mul(rd, &acc, &canonical_rep(rd, &rd.weyl_simple(k)));
    }
    acc
}

/// Twist by a based automorphism δ (one sending canonical lifts to canonical
/// lifts): torus part through δ's cocharacter action, Weyl part by
/// conjugation.
pub fn based_twist(rd: &BasedRootDatum, delta_cochar: &IMat, n: &TitsElement) -> TitsElement {
    let t = qvec_mod1(&delta_cochar.mul_qvec(&n.torus_part));
    let dq = delta_cochar
        .to_qmat()
        .inverse()
        .expect("based automorphism invertible");
    let mut dinv = IMat::zero(rd.rank, rd.rank);
    for i in 0..rd.rank {
        for j in 0..rd.rank {
            let v = dq.get(i, j);
            assert!(v.denom() == &1, "based automorphism not unimodular");
            dinv.set(i, j, *v.numer());
        }
    }
    let conj_cochar = delta_cochar.mul(&n.weyl_part.mat_cochar).mul(&dinv);
    // Character action of the conjugate: contragredient of the above.
    let conj = WeylElement {
        word: Vec::new(),
        mat_char: dinv.transpose().mul(&n.weyl_part.mat_char).mul(&delta_cochar.transpose()),
        mat_cochar: conj_cochar,
    };
    TitsElement {
        torus_part: t,
        weyl_part: rd.canonicalize_weyl(&conj),
    }
}

/// The based automorphism of a standard Levi induced by a torus involution:
/// δ_M = w₀(M) ∘ σ (on the cocharacter lattice). When the Levi is σ-stable
/// this permutes the Levi's simple roots.
pub fn based_twist_of_levi(
    rd: &BasedRootDatum,
    levi: &LeviSubset,
    sigma_cochar: &IMat,
) -> Result<IMat> {
    let w0m = rd.longest_in_subsystem(&levi.root_indices);
    let delta = w0m.mat_cochar.mul(sigma_cochar);
    // Check: δ maps Levi simples to Levi simples. The character action is
    // the contragredient (inverse-transpose) of the cocharacter action.
    let dq = delta
        .to_qmat()
        .inverse()
        .ok_or_else(|| Error::internal("singular twist"))?;
    let mut delta_char = IMat::zero(rd.rank, rd.rank);
    for i in 0..rd.rank {
        for j in 0..rd.rank {
            let v = dq.get(j, i);
            if v.denom() != &1 {
                return Err(Error::internal("twist not unimodular"));
            }
            delta_char.set(i, j, *v.numer());
        }
    }
    let m_simples = rd.subsystem_simples(&levi.root_indices);
    for &b in &m_simples {
        let img = delta_char.mul_vec(&rd.roots[b]);
        let idx = rd
            .root_index(&img)
            .ok_or_else(|| Error::validation("Levi not sigma-stable"))?;
        if !m_simples.contains(&idx) {
            return Err(Error::validation("Levi not sigma-stable as a based system"));
        }
    }
    Ok(delta)
}

/// The extended cocycle identity for a σ-stable standard Levi: with
/// n = n_{w₀(G)} and n_M = n_{w₀(M)}, the torus parts of n·σ̄(n) and
/// n_M·σ̄_M(n_M) equal (−1)^{2ι} and (−1)^{2ι_M}, and their ratio is
/// (−1)^{2(ι−ι_M)}.
pub fn verify_lemma_cocycle(
    rd: &BasedRootDatum,
    levi: &LeviSubset,
    sigma_cochar: &IMat,
) -> Result<bool> {
    let full = rd.full_levi();
    let delta_g = based_twist_of_levi(rd, &full, sigma_cochar)?;
    let delta_m = based_twist_of_levi(rd, levi, sigma_cochar)?;
    let n = canonical_rep(rd, &rd.longest_element());
    let n_m = canonical_rep(rd, &rd.longest_in_subsystem(&levi.root_indices));
    let prod_g = mul(rd, &n, &based_twist(rd, &delta_g, &n));
    let prod_m = mul(rd, &n_m, &based_twist(rd, &delta_m, &n_m));
    if !prod_g.weyl_part.is_identity() || !prod_m.weyl_part.is_identity() {
        return Ok(false);
    }
    let iota = rd.half_sum_coroots(&full);
    let iota_m = rd.half_sum_coroots(levi);
    let ok_g = prod_g.torus_part == qvec_mod1(&iota);
    let ok_m = prod_m.torus_part == qvec_mod1(&iota_m);
    let diff = qvec_mod1(&qvec_sub(&prod_g.torus_part, &prod_m.torus_part));
    let ok_diff = diff == qvec_mod1(&qvec_sub(&iota, &iota_m));
    Ok(ok_g && ok_m && ok_diff)
}

/// The cochain ξ_M(w_σ) = n_M⁻¹·n′, where n′ = τ·n_{w₀} is the adjustment of
/// the canonical longest lift by a torus element τ in ½·(Levi coroot span)
/// making conjugation by n′ send each Levi-simple canonical lift to the
/// canonical lift of its image reflection.
pub fn xi_m_cochain(rd: &BasedRootDatum, levi: &LeviSubset) -> Result<TitsElement> {
    let w0 = rd.longest_element();
    let n_m = canonical_rep(rd, &rd.longest_in_subsystem(&levi.root_indices));
    let m_simples = rd.subsystem_simples(&levi.root_indices);
    // Candidate torus adjustments: {0, ½} coefficients on the Levi coroots.
    let k = m_simples.len();
    for mask in 0..(1u32 << k) {
        let mut tau = vec![Rat::zero(); rd.rank];
        for (pos, &b) in m_simples.iter().enumerate() {
            if (mask >> pos) & 1 == 1 {
                for (a, &c) in tau.iter_mut().zip(&rd.coroots[b]) {
                    *a += Rat::new(c, 2);
                }
            }
        }
        let n_prime = mul(rd, &TitsElement::torus(&tau), &canonical_rep(rd, &w0));
        let n_prime_inv = inverse(rd, &n_prime);
        let mut ok = true;
        for &b in &m_simples {
            let s_b = rd.reflection_of_root(b);
            let conj = mul(rd, &mul(rd, &n_prime, &canonical_rep(rd, &s_b)), &n_prime_inv);
            // Must be the canonical lift of the image reflection: zero torus part.
            if !conj.torus_part.iter().all(|x| x.is_zero()) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(mul(rd, &inverse(rd, &n_m), &n_prime));
        }
    }
    Err(Error::internal(
        "no torus adjustment matches the Levi's canonical lifts",
    ))
}

/// σ₂-part of the parameter cochain attached to an endoscopic subsystem:
/// given the subsystem of dual roots of H, the torus involution, the χ-data
/// shift δ = ι − ι_H (supplied by the caller), and the H-side cochain value
/// t_{ξ₁}, return (μ∗, λ∗) with λ∗ = torus(n_H·n_G⁻¹) + t_{ξ₁} mod the
/// lattice. The σ-equivariance identity relating μ∗ and λ∗ is enforced.
pub fn t2_cochain(
    rd: &BasedRootDatum,
    h_root_indices: &[usize],
    sigma_cochar: &IMat,
    chi_shift: &[Rat],
    t_xi1: &[Rat],
) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let n_g = canonical_rep(rd, &rd.longest_element());
    let n_h = canonical_rep(rd, &rd.longest_in_subsystem(h_root_indices));
    let ratio = mul(rd, &n_h, &inverse(rd, &n_g));
    let lambda_star = qvec_mod1(&qvec_add(&ratio.torus_part, t_xi1));
    let mu_star = chi_shift.to_vec();
    // Equivariance: ½(μ∗ − σμ∗) − (ι − ι_H) ≡ λ∗ + σλ∗ mod the lattice.
    let iota = rd.half_sum_coroots(&rd.full_levi());
    let iota_h = rd.half_sum_coroots_of(h_root_indices);
    let smu = sigma_cochar.mul_qvec(&mu_star);
    let lhs = qvec_sub(
        &qvec_scale(&qvec_sub(&mu_star, &smu), Rat::new(1, 2)),
        &qvec_sub(&iota, &iota_h),
    );
    let rhs = qvec_add(&lambda_star, &sigma_cochar.mul_qvec(&lambda_star));
    if !is_int_vec(&qvec_sub(&lhs, &rhs)) {
        return Err(Error::validation(
            "chi-data shift inconsistent with the cocycle equivariance",
        ));
    }
    Ok((mu_star, lambda_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qvec;
    use crate::realform::fundamental_involution;
    use crate::rootdata::{build_root_datum, Isogeny};

    #[test]
    fn simple_square_is_half_coroot() {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let rd = build_root_datum("A1", iso).unwrap();
            let n = canonical_rep(&rd, &rd.weyl_simple(0));
            let sq = mul(&rd, &n, &n);
            assert!(sq.weyl_part.is_identity());
            let half: Vec<Rat> = rd
                .simple_coroot(0)
                .iter()
                .map(|&x| Rat::new(x, 2))
                .collect();
            assert_eq!(sq.torus_part, qvec_mod1(&half));
        }
    }

    #[test]
    fn a2_braid_relation() {
        let rd = build_root_datum("A2", Isogeny::SimplyConnected).unwrap();
        let lhs = product_along_word(&rd, &[0, 1, 0]);
        let rhs = product_along_word(&rd, &[1, 0, 1]);
        assert!(lhs.equal(&rhs));
    }

    #[test]
    fn braid_invariance_rank_two() {
        for ty in ["A1xA1", "A2", "B2", "G2"] {
            let rd = build_root_datum(ty, Isogeny::SimplyConnected).unwrap();
            for w in rd.weyl_elements() {
                let words = rd.reduced_words(w);
                let first = product_along_word(&rd, &words[0]);
                for word in &words[1..] {
                    assert!(
                        product_along_word(&rd, word).equal(&first),
                        "braid invariance fails in {ty}"
                    );
                }
            }
        }
    }

    #[test]
    fn length_additive_products() {
        let rd = build_root_datum("B2", Isogeny::SimplyConnected).unwrap();
        for a in rd.weyl_elements() {
            for b in rd.weyl_elements() {
                let ab = rd.canonicalize_weyl(&a.compose(b));
                if ab.length() == a.length() + b.length() {
                    let prod = mul(&rd, &canonical_rep(&rd, a), &canonical_rep(&rd, b));
                    assert!(prod.equal(&canonical_rep(&rd, &ab)));
                }
            }
        }
    }

    #[test]
    fn inverses() {
        for ty in ["A2", "B2"] {
            let rd = build_root_datum(ty, Isogeny::SimplyConnected).unwrap();
            for w in rd.weyl_elements() {
                let n = canonical_rep(&rd, w);
                assert!(mul(&rd, &n, &inverse(&rd, &n)).is_identity());
                assert!(mul(&rd, &inverse(&rd, &n), &n).is_identity());
                // With a torus part too.
                let mut t = vec![Rat::zero(); rd.rank];
                t[0] = Rat::new(1, 2);
                let m = mul(&rd, &TitsElement::torus(&t), &n);
                assert!(mul(&rd, &m, &inverse(&rd, &m)).is_identity());
            }
        }
    }

    #[test]
    fn longest_square_is_iota() {
        for ty in ["A1", "A2", "B2", "G2", "A1xA1"] {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let rd = build_root_datum(ty, iso).unwrap();
                let n = canonical_rep(&rd, &rd.longest_element());
                let sq = mul(&rd, &n, &n);
                assert!(sq.weyl_part.is_identity());
                let iota = rd.half_sum_coroots(&rd.full_levi());
                assert_eq!(sq.torus_part, qvec_mod1(&iota), "{ty}");
            }
        }
    }

    #[test]
    fn cocycle_identity_small() {
        // A1 adjoint: ι integral so everything trivial; A1 sc: both sides α∨(−1).
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let rd = build_root_datum("A1", iso).unwrap();
            let sigma = fundamental_involution(&rd, &[0]).unwrap().sigma;
            assert!(verify_lemma_cocycle(&rd, &rd.full_levi(), &sigma).unwrap());
            assert!(verify_lemma_cocycle(&rd, &rd.levi(&[]), &sigma).unwrap());
        }
        // A2 with a one-simple Levi under the elliptic involution.
        let rd = build_root_datum("A2", Isogeny::SimplyConnected).unwrap();
        let sigma = fundamental_involution(&rd, &[1, 0]).unwrap().sigma;
        for levi in [rd.levi(&[0]), rd.levi(&[1]), rd.levi(&[0, 1]), rd.levi(&[])] {
            assert!(verify_lemma_cocycle(&rd, &levi, &sigma).unwrap());
        }
    }

    #[test]
    fn xi_full_levi_trivial_torus() {
        let rd = build_root_datum("B2", Isogeny::SimplyConnected).unwrap();
        let xi = xi_m_cochain(&rd, &rd.full_levi()).unwrap();
        assert!(xi.weyl_part.is_identity());
        assert!(xi.torus_part.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn xi_torus_levi_is_longest() {
        let rd = build_root_datum("A1", Isogeny::SimplyConnected).unwrap();
        let xi = xi_m_cochain(&rd, &rd.levi(&[])).unwrap();
        assert!(xi.equal(&canonical_rep(&rd, &rd.longest_element())));
    }

    #[test]
    fn xi_square_value() {
        // ξ_M combined with its Levi-twisted conjugate squares to
        // (−1)^{2(ι−ι_M)}.
        for (ty, iso) in [
            ("B2", Isogeny::SimplyConnected),
            ("B2", Isogeny::Adjoint),
            ("A2", Isogeny::SimplyConnected),
        ] {
            let rd = build_root_datum(ty, iso).unwrap();
            let perm: Vec<usize> = if ty == "A2" { vec![1, 0] } else { vec![0, 1] };
            let sigma = fundamental_involution(&rd, &perm).unwrap().sigma;
            for sub in [vec![0usize], vec![1usize]] {
                let levi = rd.levi(&sub);
                let delta_m = based_twist_of_levi(&rd, &levi, &sigma).unwrap();
                let xi = xi_m_cochain(&rd, &levi).unwrap();
                let sq = mul(&rd, &xi, &based_twist(&rd, &delta_m, &xi));
                assert!(sq.weyl_part.is_identity(), "{ty} levi {sub:?}");
                let iota = rd.half_sum_coroots(&rd.full_levi());
                let iota_m = rd.half_sum_coroots(&levi);
                assert_eq!(
                    sq.torus_part,
                    qvec_mod1(&qvec_sub(&iota, &iota_m)),
                    "{ty} levi {sub:?}"
                );
            }
        }
    }

    #[test]
    fn t2_sl2_torus_endoscopy() {
        // G = SL2: parameters live on the dual (adjoint) datum; H = the
        // elliptic torus, so the subsystem is empty and the χ-shift is ι.
        let rd = build_root_datum("A1", Isogeny::Adjoint).unwrap();
        let sigma = IMat::from_rows(&[vec![-1]]);
        let iota = rd.half_sum_coroots(&rd.full_levi());
        let (mu_star, lambda_star) =
            t2_cochain(&rd, &[], &sigma, &iota, &[Rat::zero()]).unwrap();
        assert_eq!(mu_star, qvec(&[1]));
        assert_eq!(lambda_star, qvec(&[0]));
        // H = G (s central): everything trivial.
        let all: Vec<usize> = (0..rd.roots.len()).collect();
        let (mu0, l0) =
            t2_cochain(&rd, &all, &sigma, &[Rat::zero()], &[Rat::zero()]).unwrap();
        assert_eq!(mu0, qvec(&[0]));
        assert_eq!(l0, qvec(&[0]));
    }
}
