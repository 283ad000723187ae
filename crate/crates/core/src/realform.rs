//! Real forms through lattice involutions: fundamental tori, compact /
//! noncompact gradings of imaginary roots, Cayley transforms, and the
//! signs q(G) and ε(G).

use crate::error::{Error, Result};
use crate::linalg::{dot_iq, is_int_vec, qvec, qvec_scale, IMat, QMat, Rat};
use num::Zero;
use crate::rootdata::BasedRootDatum;

/// A maximal torus of a real group, encoded by the Galois involution on its
/// cocharacter lattice. The character-lattice action is the contragredient
/// (the transpose, since sigma is an involution).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTorus {
    pub rd: BasedRootDatum,
    /// Involution on the cocharacter lattice.
    pub sigma: IMat,
}

impl RealTorus {
    pub fn new(rd: BasedRootDatum, sigma: IMat) -> Result<RealTorus> {
        if sigma.rows != rd.rank || sigma.cols != rd.rank {
            return Err(Error::validation("sigma has wrong shape"));
        }
        if !sigma.mul(&sigma).is_identity() {
            return Err(Error::validation("sigma is not an involution"));
        }
        let t = RealTorus { rd, sigma };
        let sc = t.sigma_char();
        for r in &t.rd.roots {
            let img = sc.mul_vec(r);
            if t.rd.root_index(&img).is_none() {
                return Err(Error::validation("sigma does not permute the roots"));
            }
        }
        Ok(t)
    }

    /// Action on the character lattice.
    pub fn sigma_char(&self) -> IMat {
        self.sigma.transpose()
    }

    /// σ_T α = −α and α lies in the span of the imaginary simple roots.
    pub fn is_imaginary(&self, root_idx: usize) -> bool {
        let sc = self.sigma_char();
        let r = &self.rd.roots[root_idx];
        let img = sc.mul_vec(r);
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        if img != neg {
            return false;
        }
        let im_simples = self.imaginary_simples();
        self.rd.simple_coords[root_idx]
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || im_simples.contains(&k))
    }

    pub fn imaginary_simples(&self) -> Vec<usize> {
        let sc = self.sigma_char();
        (0..self.rd.n_simples())
            .filter(|&k| {
                let img = sc.mul_vec(self.rd.simple_root(k));
                let neg: Vec<i64> = self.rd.simple_root(k).iter().map(|x| -x).collect();
                img == neg
            })
            .collect()
    }

    pub fn imaginary_roots(&self) -> Vec<usize> {
        (0..self.rd.roots.len())
            .filter(|&i| self.is_imaginary(i))
            .collect()
    }

    /// No root is fixed by the character action (no real roots).
    pub fn is_fundamental(&self) -> bool {
        let sc = self.sigma_char();
        self.rd.roots.iter().all(|r| &sc.mul_vec(r) != r)
    }
}

/// A fundamental torus together with the based simple system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalPair {
    pub torus: RealTorus,
}

impl FundamentalPair {
    pub fn new(torus: RealTorus) -> Result<FundamentalPair> {
        if !torus.is_fundamental() {
            return Err(Error::validation("a root is fixed by sigma (real root)"));
        }
        // −σ must permute the simple system.
        let sc = torus.sigma_char();
        for k in 0..torus.rd.n_simples() {
            let img: Vec<i64> = sc
                .mul_vec(torus.rd.simple_root(k))
                .iter()
                .map(|x| -x)
                .collect();
            let idx = torus
                .rd
                .root_index(&img)
                .ok_or_else(|| Error::validation("−sigma image of simple not a root"))?;
            if !torus.rd.simple_indices.contains(&idx) {
                return Err(Error::validation("−sigma does not permute the simples"));
            }
        }
        Ok(FundamentalPair { torus })
    }
}

/// Which lattice a half-integral 2-torsion twist lives in. The shift a twist
/// contributes to a root's grading depends on this scale, so it is explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistContext {
    /// Cocharacter coordinates of the ambient datum.
    Datum,
    /// Fundamental-coweight coordinates (adjoint-torus torsion): the pairing
    /// with a root reads off the root's simple-coordinates.
    Adjoint,
}

/// A compact/noncompact grading of the imaginary roots: a base assignment on
/// imaginary simples plus an accumulated list of torsion twists. Value 1
/// means noncompact.
#[derive(Clone, Debug)]
pub struct Grading {
    pub pair: FundamentalPair,
    /// Base value for each simple index; `None` on non-imaginary simples.
    pub base_epsilon: Vec<Option<u8>>,
    pub twists: Vec<(TwistContext, Vec<Rat>)>,
}

impl Grading {
    /// Parity shift the accumulated twists contribute to this root.
    fn twist_shift(&self, root_idx: usize) -> i64 {
        let rd = &self.pair.torus.rd;
        let mut total = 0i64;
        for (ctx, u) in &self.twists {
            let two_u = qvec_scale(u, Rat::from_integer(2));
            let p = match ctx {
                TwistContext::Datum => dot_iq(&rd.roots[root_idx], &two_u),
                TwistContext::Adjoint => dot_iq(&rd.simple_coords[root_idx], &two_u),
            };
            assert!(p.denom() == &1, "twist pairing must be integral");
            total += p.numer();
        }
        total.rem_euclid(2)
    }

    /// Grading of an imaginary root; `None` if the root is not imaginary.
    pub fn value(&self, root_idx: usize) -> Option<u8> {
        if !self.pair.torus.is_imaginary(root_idx) {
            return None;
        }
        let rd = &self.pair.torus.rd;
        let mut v = 0i64;
        for (k, &c) in rd.simple_coords[root_idx].iter().enumerate() {
            if c != 0 {
                v += c * self.base_epsilon[k].expect("imaginary support") as i64;
            }
        }
        Some(((v + self.twist_shift(root_idx)).rem_euclid(2)) as u8)
    }

    pub fn is_noncompact(&self, root_idx: usize) -> Option<bool> {
        self.value(root_idx).map(|v| v == 1)
    }

    /// Two gradings agree iff they give the same value on every imaginary root.
    pub fn same_values(&self, other: &Grading) -> bool {
        self.pair == other.pair
            && self
                .pair
                .torus
                .imaginary_roots()
                .iter()
                .all(|&i| self.value(i) == other.value(i))
    }
}

/// The fundamental involution of the inner class given by a diagram
/// automorphism: sigma = w₀ composed with the automorphism, acting on the
/// cocharacter lattice. (With this normalization no root is fixed and −sigma
/// permutes the simples, as a fundamental pair requires.)
pub fn fundamental_involution(rd: &BasedRootDatum, diagram_aut: &[usize]) -> Result<RealTorus> {
    let k = rd.n_simples();
    if diagram_aut.len() != k {
        return Err(Error::validation("permutation has wrong length"));
    }
    let mut seen = vec![false; k];
    for &p in diagram_aut {
        if p >= k || seen[p] {
            return Err(Error::validation("not a permutation"));
        }
        seen[p] = true;
    }
    let c = rd.cartan();
    for i in 0..k {
        for j in 0..k {
            if c.get(diagram_aut[i], diagram_aut[j]) != c.get(i, j) {
                return Err(Error::validation(
                    "permutation does not preserve the Cartan matrix",
                ));
            }
        }
    }
    if k != rd.rank {
        return Err(Error::validation(
            "fundamental involution needs a semisimple datum",
        ));
    }
    // Character action of the automorphism: α_i ↦ α_{π(i)}.
    let s = QMat::from_cols(
        &(0..k).map(|i| qvec(rd.simple_root(i))).collect::<Vec<_>>(),
    );
    let sp = QMat::from_cols(
        &(0..k)
            .map(|i| qvec(rd.simple_root(diagram_aut[i])))
            .collect::<Vec<_>>(),
    );
    let sinv = s.inverse().ok_or_else(|| Error::internal("simples singular"))?;
    let g_char = sp.mul(&sinv);
    let mut g_char_i = IMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = g_char.get(i, j);
            if v.denom() != &1 {
                return Err(Error::validation(
                    "diagram automorphism not integral on the character lattice",
                ));
            }
            g_char_i.set(i, j, *v.numer());
        }
    }
    // Cocharacter action is the contragredient.
    let g_cochar_q = g_char_i
        .transpose()
        .to_qmat()
        .inverse()
        .ok_or_else(|| Error::internal("automorphism singular"))?;
    let mut g_cochar = IMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = g_cochar_q.get(i, j);
            if v.denom() != &1 {
                return Err(Error::validation(
                    "diagram automorphism not integral on the cocharacter lattice",
                ));
            }
            g_cochar.set(i, j, *v.numer());
        }
    }
    let w0 = rd.longest_element();
    let sigma = w0.mat_cochar.mul(&g_cochar);
    let t = RealTorus::new(rd.clone(), sigma)?;
    FundamentalPair::new(t.clone())?;
    Ok(t)
}

/// The grading with every imaginary simple root noncompact and no twist.
pub fn whittaker_grading(pair: &FundamentalPair) -> Grading {
    let im = pair.torus.imaginary_simples();
    let base_epsilon = (0..pair.torus.rd.n_simples())
        .map(|k| if im.contains(&k) { Some(1u8) } else { None })
        .collect();
    Grading {
        pair: pair.clone(),
        base_epsilon,
        twists: Vec::new(),
    }
}

/// Twist a grading by a 2-torsion element u (2u must be integral in the
/// context lattice); shifts every imaginary root by ⟨α, 2u⟩ mod 2.
pub fn twist_grading(g: &Grading, ctx: TwistContext, u: &[Rat]) -> Result<Grading> {
    let expected = match ctx {
        TwistContext::Datum => g.pair.torus.rd.rank,
        TwistContext::Adjoint => g.pair.torus.rd.n_simples(),
    };
    if u.len() != expected {
        return Err(Error::validation("twist vector has wrong length"));
    }
    let two_u = qvec_scale(u, Rat::from_integer(2));
    if !is_int_vec(&two_u) {
        return Err(Error::validation("twist is not 2-torsion"));
    }
    let mut out = g.clone();
    out.twists.push((ctx, u.to_vec()));
    Ok(out)
}

/// Cayley transform through a noncompact imaginary root: the involution
/// becomes s_α ∘ σ, making α real.
pub fn cayley_transform(g: &Grading, root_idx: usize) -> Result<RealTorus> {
    let t = &g.pair.torus;
    match g.is_noncompact(root_idx) {
        None => return Err(Error::validation("root is not imaginary")),
        Some(false) => return Err(Error::validation("root is compact")),
        Some(true) => {}
    }
    let n = t.rd.rank;
    let alpha = &t.rd.roots[root_idx];
    let alpha_v = &t.rd.coroots[root_idx];
    let mut s_cochar = IMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            s_cochar.set(i, j, s_cochar.get(i, j) - alpha_v[i] * alpha[j]);
        }
    }
    let sigma = s_cochar.mul(&t.sigma);
    let out = RealTorus::new(t.rd.clone(), sigma)?;
    // α is now real.
    let img = out.sigma_char().mul_vec(alpha);
    if &img != alpha {
        return Err(Error::internal("Cayley transform did not make α real"));
    }
    Ok(out)
}

/// Number of noncompact positive (imaginary) roots.
pub fn q_invariant(g: &Grading) -> usize {
    let rd = &g.pair.torus.rd;
    rd.positive_roots()
        .into_iter()
        .filter(|&i| g.is_noncompact(i) == Some(true))
        .count()
}

/// (−1)^{q(g) − q(g_ref)} for two gradings on the same pair.
pub fn epsilon_sign(g: &Grading, g_ref: &Grading) -> Result<i64> {
    if g.pair != g_ref.pair {
        return Err(Error::validation("gradings live on different pairs"));
    }
    let d = q_invariant(g) as i64 - q_invariant(g_ref) as i64;
    Ok(if d.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Does a root-datum automorphism preserve the pair (permute the simples and
/// commute with sigma)?
pub fn check_twist_admissible(pair: &FundamentalPair, theta_char: &IMat) -> Result<bool> {
    let rd = &pair.torus.rd;
    let n = rd.rank;
    if theta_char.rows != n || theta_char.cols != n {
        return Err(Error::validation("theta has wrong shape"));
    }
    // Must be a lattice automorphism normalizing the root set.
    let inv = theta_char.to_qmat().inverse().ok_or_else(|| {
        Error::validation("theta is singular")
    })?;
    if (0..n).any(|j| !is_int_vec(&inv.col(j))) {
        return Err(Error::validation("theta is not a lattice automorphism"));
    }
    for r in &rd.roots {
        if rd.root_index(&theta_char.mul_vec(r)).is_none() {
            return Err(Error::validation("theta does not permute the roots"));
        }
    }
    // Preserves the pair: permutes the simple system.
    let permutes = (0..rd.n_simples()).all(|k| {
        rd.root_index(&theta_char.mul_vec(rd.simple_root(k)))
            .map(|i| rd.simple_indices.contains(&i))
            .unwrap_or(false)
    });
    // Commutes with sigma on the character lattice.
    let sc = pair.torus.sigma_char();
    let commutes = theta_char.mul(&sc) == sc.mul(theta_char);
    Ok(permutes && commutes)
}

/// Zero vector helper for twist-free calls.
pub fn zero_twist(rank: usize) -> Vec<Rat> {
    vec![Rat::zero(); rank]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qvec;
    use crate::rootdata::{build_root_datum, Isogeny};

    fn a1_sc_pair() -> FundamentalPair {
        let rd = build_root_datum("A1", Isogeny::SimplyConnected).unwrap();
        FundamentalPair::new(fundamental_involution(&rd, &[0]).unwrap()).unwrap()
    }

    #[test]
    fn a1_fundamental_is_minus_one() {
        let t = a1_sc_pair().torus;
        assert_eq!(t.sigma, IMat::from_rows(&[vec![-1]]));
        assert!(t.is_fundamental());
        assert_eq!(t.imaginary_roots().len(), 2);
    }

    #[test]
    fn a2_fundamental_identity_aut() {
        let rd = build_root_datum("A2", Isogeny::SimplyConnected).unwrap();
        let t = fundamental_involution(&rd, &[0, 1]).unwrap();
        // sigma = w₀ on cochars; −sigma_char is the diagram flip on simples.
        let sc = t.sigma_char();
        let img: Vec<i64> = sc.mul_vec(rd.simple_root(0)).iter().map(|x| -x).collect();
        assert_eq!(img, rd.simple_root(1));
        assert!(t.is_fundamental());
        // A2 with identity twist: no imaginary simples (sigma swaps-negates them).
        assert!(t.imaginary_simples().is_empty());
    }

    #[test]
    fn a1xa1_swap_involution() {
        let rd = build_root_datum("A1xA1", Isogeny::SimplyConnected).unwrap();
        let t = fundamental_involution(&rd, &[1, 0]).unwrap();
        // Swap factors then negate.
        assert_eq!(
            t.sigma,
            IMat::from_rows(&[vec![0, -1], vec![-1, 0]])
        );
        assert!(t.imaginary_simples().is_empty());
        let pair = FundamentalPair::new(t).unwrap();
        let g = whittaker_grading(&pair);
        assert!(g.pair.torus.imaginary_roots().is_empty());
        // Identity inner class: both simples imaginary.
        let t2 = fundamental_involution(&rd, &[0, 1]).unwrap();
        assert_eq!(t2.imaginary_simples(), vec![0, 1]);
    }

    #[test]
    fn diagram_aut_rejected_when_not_symmetry() {
        let rd = build_root_datum("B2", Isogeny::SimplyConnected).unwrap();
        assert!(fundamental_involution(&rd, &[1, 0]).is_err());
        assert!(fundamental_involution(&rd, &[0, 0]).is_err());
    }

    #[test]
    fn sl2_twist_scales() {
        let pair = a1_sc_pair();
        let g = whittaker_grading(&pair);
        let alpha_idx = pair.torus.rd.simple_indices[0];
        assert_eq!(g.value(alpha_idx), Some(1)); // noncompact: SL(2,ℝ)
        // Datum-scale twist by α∨/2 shifts by ⟨α, α∨⟩ = 2 ≡ 0: still split.
        let g2 = twist_grading(&g, TwistContext::Datum, &[Rat::new(1, 2)]).unwrap();
        assert_eq!(g2.value(alpha_idx), Some(1));
        // Adjoint-scale half twist shifts by 1: the SU(2) grading.
        let g3 = twist_grading(&g, TwistContext::Adjoint, &[Rat::new(1, 2)]).unwrap();
        assert_eq!(g3.value(alpha_idx), Some(0));
        // Twist then untwist is the identity; integral twists do nothing.
        let g4 = twist_grading(&g3, TwistContext::Adjoint, &[Rat::new(-1, 2)]).unwrap();
        assert!(g4.same_values(&g));
        let g5 = twist_grading(&g, TwistContext::Datum, &qvec(&[3])).unwrap();
        assert!(g5.same_values(&g));
        // Non-torsion twist rejected.
        assert!(twist_grading(&g, TwistContext::Datum, &[Rat::new(1, 3)]).is_err());
    }

    #[test]
    fn q_and_epsilon_sl2() {
        let pair = a1_sc_pair();
        let split = whittaker_grading(&pair);
        let compact = twist_grading(&split, TwistContext::Adjoint, &[Rat::new(1, 2)]).unwrap();
        assert_eq!(q_invariant(&split), 1);
        assert_eq!(q_invariant(&compact), 0);
        assert_eq!(epsilon_sign(&compact, &split).unwrap(), -1);
        assert_eq!(epsilon_sign(&split, &split).unwrap(), 1);
    }

    #[test]
    fn grading_additivity_exhaustive() {
        // All gradings reachable by twists on B2 and A2-elliptic-by-flip etc.
        for ty in ["B2", "A2", "G2"] {
            let rd = build_root_datum(ty, Isogeny::SimplyConnected).unwrap();
            // Elliptic inner class: use the flip for A2 so sigma = w₀∘flip = −1.
            let perm: Vec<usize> = if ty == "A2" { vec![1, 0] } else { vec![0, 1] };
            let t = fundamental_involution(&rd, &perm).unwrap();
            let pair = FundamentalPair::new(t).unwrap();
            let base = whittaker_grading(&pair);
            let mut gradings = vec![base.clone()];
            for b0 in [0, 1] {
                for b1 in [0, 1] {
                    let u = vec![Rat::new(b0, 2), Rat::new(b1, 2)];
                    gradings.push(twist_grading(&base, TwistContext::Adjoint, &u).unwrap());
                }
            }
            for g in &gradings {
                for &i in &pair.torus.imaginary_roots() {
                    for &j in &pair.torus.imaginary_roots() {
                        let sum: Vec<i64> = rd.roots[i]
                            .iter()
                            .zip(&rd.roots[j])
                            .map(|(a, b)| a + b)
                            .collect();
                        if let Some(k) = rd.root_index(&sum) {
                            if pair.torus.is_imaginary(k) {
                                assert_eq!(
                                    g.value(k).unwrap(),
                                    (g.value(i).unwrap() + g.value(j).unwrap()) % 2,
                                    "additivity in {ty}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn elliptic_b2_grading_by_parity() {
        let rd = build_root_datum("B2", Isogeny::SimplyConnected).unwrap();
        let t = fundamental_involution(&rd, &[0, 1]).unwrap();
        let pair = FundamentalPair::new(t).unwrap();
        let g = whittaker_grading(&pair);
        for &i in &rd.positive_roots() {
            let coeff_sum: i64 = rd.simple_coords[i].iter().sum();
            assert_eq!(g.value(i).unwrap() as i64, coeff_sum.rem_euclid(2));
        }
    }

    #[test]
    fn cayley_sl2() {
        let pair = a1_sc_pair();
        let g = whittaker_grading(&pair);
        let alpha_idx = pair.torus.rd.simple_indices[0];
        let split = cayley_transform(&g, alpha_idx).unwrap();
        assert_eq!(split.sigma, IMat::identity(1)); // split torus
        assert!(split.imaginary_roots().len() < pair.torus.imaginary_roots().len());
        // Compact root rejected.
        let su2 = twist_grading(&g, TwistContext::Adjoint, &[Rat::new(1, 2)]).unwrap();
        assert!(cayley_transform(&su2, alpha_idx).is_err());
    }

    #[test]
    fn cayley_b2_decreases_imaginary() {
        let rd = build_root_datum("B2", Isogeny::SimplyConnected).unwrap();
        let t = fundamental_involution(&rd, &[0, 1]).unwrap();
        let pair = FundamentalPair::new(t.clone()).unwrap();
        let g = whittaker_grading(&pair);
        for &i in &t.imaginary_roots() {
            if g.is_noncompact(i) == Some(true) {
                let t2 = cayley_transform(&g, i).unwrap();
                assert!(t2.imaginary_roots().len() < t.imaginary_roots().len());
            }
        }
    }

    #[test]
    fn whittaker_q_maximal_in_twist_orbit() {
        for ty in ["A1", "B2"] {
            let rd = build_root_datum(ty, Isogeny::SimplyConnected).unwrap();
            let perm: Vec<usize> = (0..rd.n_simples()).collect();
            let pair =
                FundamentalPair::new(fundamental_involution(&rd, &perm).unwrap()).unwrap();
            let wh = whittaker_grading(&pair);
            let qmax = q_invariant(&wh);
            let k = rd.n_simples();
            for mask in 0..(1u32 << k) {
                let u: Vec<Rat> = (0..k)
                    .map(|i| Rat::new(((mask >> i) & 1) as i64, 2))
                    .collect();
                let g = twist_grading(&wh, TwistContext::Adjoint, &u).unwrap();
                assert!(q_invariant(&g) <= qmax);
            }
        }
    }

    #[test]
    fn twist_admissibility() {
        // A1 elliptic pair, identity automorphism: admissible.
        let pair = a1_sc_pair();
        assert!(check_twist_admissible(&pair, &IMat::identity(1)).unwrap());
        // A1xA1 swap pair with the factor-swap automorphism: admissible.
        let rd = build_root_datum("A1xA1", Isogeny::SimplyConnected).unwrap();
        let t = fundamental_involution(&rd, &[1, 0]).unwrap();
        let pair2 = FundamentalPair::new(t).unwrap();
        let swap = IMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(check_twist_admissible(&pair2, &swap).unwrap());
        // Non-automorphism rejected.
        let bad = IMat::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(check_twist_admissible(&pair2, &bad).is_err());
        // A2 elliptic pair with an automorphism not commuting with sigma:
        // sigma = −1 (flip class), everything commutes, so build the
        // identity-class pair instead? A2 identity class has sigma = w₀,
        // and the flip automorphism does commute with w₀. Use A1xA1
        // identity class with swap: sigma = −id commutes too. Construct a
        // genuinely non-commuting case on A1xA1: sigma = swap∘(−1),
        // theta = diag-preserving reflection on one factor is not a datum
        // automorphism; instead check a valid automorphism that fails to
        // permute the based simples is reported false.
        let neg = IMat::from_rows(&[vec![-1, 0], vec![0, -1]]);
        assert_eq!(check_twist_admissible(&pair2, &neg).unwrap(), false);
    }
}
