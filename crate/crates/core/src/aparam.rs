//! Elliptic u-regular Arthur parameter data ψ = (φ[μ,λ], ρ(ι_M)):
//! validation, dominance normalization, the attached s-elliptic parameter,
//! and regularity/ellipticity tests.

use crate::error::{Error, Result};
use crate::linalg::{dot_iq, is_int_vec, qvec_add, qvec_scale, qvec_sub, IMat, Rat};
use crate::lparam::{canonical_lambda, condition_bullet, iota_of, LParamData};
use crate::realform::RealTorus;
use crate::rootdata::{BasedRootDatum, LeviSubset};
use num::Zero;

/// ψ = (φ[μ,λ], ρ(ι_M)) stored through its combinatorial data: the dual
/// datum, the Levi M∨, the involution σ_M, and the pair (μ, λ). ρ enters
/// only through ι_M, the half-sum of the Levi's positive coroots.
#[derive(Clone, Debug)]
pub struct AParamData {
    pub dual_datum: BasedRootDatum,
    pub levi: LeviSubset,
    pub sigma_m: IMat,
    pub mu: Vec<Rat>,
    /// Canonical representative modulo 𝒦_M = X_* + {ν : σ_M ν = −ν}.
    pub lambda: Vec<Rat>,
    pub iota_m: Vec<Rat>,
}

/// Outcome of the regularity test on μ_M = μ − (ι − ι_M): regular means
/// μ_M is dominant; otherwise the witnesses are the simple roots pairing
/// to −1 (the only negative value that can occur).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    Singular { witnesses: Vec<usize> },
}

impl AParamData {
    pub fn new(
        dual_datum: BasedRootDatum,
        levi_subset: &[usize],
        sigma_m: IMat,
        mu: &[Rat],
        lambda: &[Rat],
    ) -> Result<AParamData> {
        let n = dual_datum.rank;
        if mu.len() != n || lambda.len() != n {
            return Err(Error::validation("parameter vectors have wrong length"));
        }
        // σ_M must be an involution permuting the dual roots…
        RealTorus::new(dual_datum.clone(), sigma_m.clone())?;
        let levi = dual_datum.levi(levi_subset);
        let iota_m = dual_datum.half_sum_coroots(&levi);
        // …and stabilizing the Levi's root set.
        let sigma_m_char = sigma_m.transpose();
        for &i in &levi.root_indices {
            let img = sigma_m_char.mul_vec(&dual_datum.roots[i]);
            let ok = dual_datum
                .root_index(&img)
                .map(|j| levi.root_indices.contains(&j))
                .unwrap_or(false);
            if !ok {
                return Err(Error::validation("sigma_M does not stabilize the Levi"));
            }
        }
        let lambda_c = canonical_lambda(&sigma_m, lambda);
        // μ annihilates the Levi roots and λ pairs integrally with them.
        for &i in &levi.root_indices {
            if !dot_iq(&dual_datum.roots[i], mu).is_zero() {
                return Err(Error::validation("mu does not annihilate the Levi roots"));
            }
            if dot_iq(&dual_datum.roots[i], &lambda_c).denom() != &1 {
                return Err(Error::validation(
                    "lambda does not pair integrally with the Levi roots",
                ));
            }
        }
        // Defining congruence, in the σ_M form and in the shifted form; the
        // two are equivalent given the other invariants, and both are checked.
        let iota = iota_of(&dual_datum);
        let smu = sigma_m.mul_qvec(mu);
        let rhs = qvec_add(lambda, &sigma_m.mul_qvec(lambda));
        let lhs_m = qvec_sub(
            &qvec_scale(&qvec_sub(mu, &smu), Rat::new(1, 2)),
            &qvec_sub(&iota, &iota_m),
        );
        if !is_int_vec(&qvec_sub(&lhs_m, &rhs)) {
            return Err(Error::validation("parameter congruence fails"));
        }
        let mu_hat = qvec_add(mu, &iota_m);
        let lhs_t = qvec_sub(
            &qvec_scale(&qvec_sub(&mu_hat, &sigma_m.mul_qvec(&mu_hat)), Rat::new(1, 2)),
            &iota,
        );
        if !is_int_vec(&qvec_sub(&lhs_t, &rhs)) {
            return Err(Error::internal("shifted congruence form disagrees"));
        }
        // μ + ι_M pairs integrally with every dual root.
        for r in &dual_datum.roots {
            if dot_iq(r, &mu_hat).denom() != &1 {
                return Err(Error::validation("mu + iota_M is not integral"));
            }
        }
        Ok(AParamData {
            dual_datum,
            levi,
            sigma_m,
            mu: mu.to_vec(),
            lambda: lambda_c,
            iota_m,
        })
    }

    pub fn is_normalized(&self) -> bool {
        let mu_hat = qvec_add(&self.mu, &self.iota_m);
        self.dual_datum.is_dominant(&self.mu, true)
            && self.dual_datum.is_dominant(&mu_hat, true)
    }

    /// Conjugate by a Weyl element ω so that ω(μ+ι_M) is dominant and the
    /// Levi stays standard; then ι of the new Levi equals ω ι_M and ωμ is
    /// dominant as well.
    pub fn normalize(&self) -> Result<AParamData> {
        if self.is_normalized() {
            return Ok(self.clone());
        }
        let rd = &self.dual_datum;
        let mu_hat = qvec_add(&self.mu, &self.iota_m);
        for w in rd.weyl_elements() {
            let img = w.mat_cochar.mul_qvec(&mu_hat);
            if !rd.is_dominant(&img, true) {
                continue;
            }
            // The conjugated Levi must again be standard.
            let mapped: Vec<Option<usize>> = self
                .levi
                .root_indices
                .iter()
                .map(|&i| rd.root_index(&w.mat_char.mul_vec(&rd.roots[i])))
                .collect();
            if mapped.iter().any(|m| m.is_none()) {
                continue;
            }
            let mut mapped: Vec<usize> = mapped.into_iter().map(|m| m.unwrap()).collect();
            mapped.sort_unstable();
            let subset: Vec<usize> = (0..rd.n_simples())
                .filter(|&k| mapped.contains(&rd.simple_indices[k]))
                .collect();
            let cand = rd.levi(&subset);
            let mut cand_roots = cand.root_indices.clone();
            cand_roots.sort_unstable();
            if cand_roots != mapped {
                continue;
            }
            let sigma_new = w
                .mat_cochar
                .mul(&self.sigma_m)
                .mul(&w.inverse().mat_cochar);
            let out = AParamData::new(
                rd.clone(),
                &subset,
                sigma_new,
                &w.mat_cochar.mul_qvec(&self.mu),
                &w.mat_cochar.mul_qvec(&self.lambda),
            )?;
            if out.iota_m != w.mat_cochar.mul_qvec(&self.iota_m) {
                return Err(Error::internal("iota of conjugated Levi is not omega(iota_M)"));
            }
            if !out.is_normalized() {
                return Err(Error::internal("normalization did not reach dominance"));
            }
            return Ok(out);
        }
        Err(Error::internal("no Weyl element normalizes the parameter"))
    }

    /// The s-elliptic Langlands parameter φ(μ+ι_M, λ) attached to ψ.
    pub fn attached_selliptic(&self) -> Result<LParamData> {
        LParamData::new(
            self.dual_datum.clone(),
            self.sigma_m.clone(),
            &qvec_add(&self.mu, &self.iota_m),
            &self.lambda,
        )
    }

    /// Regular iff μ_M = μ − (ι − ι_M) is dominant; a singular witness
    /// always pairs to exactly −1.
    pub fn regularity_test(&self) -> Result<Regularity> {
        let rd = &self.dual_datum;
        let iota = iota_of(rd);
        let mu_m = qvec_sub(&self.mu, &qvec_sub(&iota, &self.iota_m));
        let mut witnesses = Vec::new();
        for k in 0..rd.n_simples() {
            let p = dot_iq(rd.simple_root(k), &mu_m);
            if p < Rat::zero() {
                if p != Rat::from_integer(-1) {
                    return Err(Error::internal(
                        "singular witness pairing differs from -1",
                    ));
                }
                witnesses.push(k);
            }
        }
        if witnesses.is_empty() {
            Ok(Regularity::Regular)
        } else {
            Ok(Regularity::Singular { witnesses })
        }
    }

    /// μ_M = μ − (ι − ι_M); integral against every dual root.
    pub fn mu_m(&self) -> Vec<Rat> {
        let iota = iota_of(&self.dual_datum);
        qvec_sub(&self.mu, &qvec_sub(&iota, &self.iota_m))
    }

    pub fn is_elliptic(&self) -> bool {
        condition_bullet(&self.dual_datum, &self.levi, &self.sigma_m)
    }
}
