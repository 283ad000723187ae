//! Based root data: construction from Cartan types at a chosen isogeny,
//! duality, Weyl groups with reduced words, dominance, Levi subsystems,
//! and half-sums of positive coroots.
//!
//! Conventions: Bourbaki numbering of simple roots; composite types are
//! written with "x" ("A1xA1"). Characters and cocharacters are integer
//! vectors of length `rank`, paired by the standard dot product. The
//! character lattice basis is the fundamental-weight basis for the
//! simply-connected isogeny; a general isogeny is an explicit basis matrix
//! (columns in fundamental-weight coordinates) between the root and weight
//! lattices.

use crate::error::{Error, Result};
use crate::linalg::{dot_iq, idot, qvec, IMat, QMat, Rat};
use num::Zero;
use std::collections::HashMap;
use std::sync::OnceLock;

/// How the character lattice sits between the root and weight lattices.
#[derive(Clone, Debug)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Columns express the chosen character-lattice basis in
    /// fundamental-weight coordinates.
    Basis(IMat),
}

/// An element of the Weyl group, carrying a reduced word in simple
/// reflections and both lattice actions.
#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Indices into the simple system; product is taken left-to-right,
    /// with the leftmost reflection applied last.
    pub word: Vec<usize>,
    /// Action on the character lattice.
    pub mat_char: IMat,
    /// Action on the cocharacter lattice (contragredient of `mat_char`).
    pub mat_cochar: IMat,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat_char == other.mat_char
    }
}
impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            mat_char: IMat::identity(rank),
            mat_cochar: IMat::identity(rank),
        }
    }
    pub fn length(&self) -> usize {
        self.word.len()
    }
    pub fn is_identity(&self) -> bool {
        self.mat_char.is_identity()
    }
    /// Composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(other.word.iter().copied());
        WeylElement {
            word,
            mat_char: self.mat_char.mul(&other.mat_char),
            mat_cochar: self.mat_cochar.mul(&other.mat_cochar),
        }
    }
    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            // Reflection matrices are their own inverses; the inverse of the
            // product is the reversed product, i.e. the transpose of the
            // cocharacter action.
            mat_char: self.mat_cochar.transpose(),
            mat_cochar: self.mat_char.transpose(),
        }
    }
    pub fn apply_char(&self, v: &[Rat]) -> Vec<Rat> {
        self.mat_char.mul_qvec(v)
    }
    pub fn apply_cochar(&self, v: &[Rat]) -> Vec<Rat> {
        self.mat_cochar.mul_qvec(v)
    }
}

/// A based root datum: character/cocharacter lattices ℤ^rank with the dot
/// pairing, roots and coroots in bijection, and an ordered simple system.
#[derive(Clone, Debug)]
pub struct BasedRootDatum {
    pub rank: usize,
    /// Root vectors in character coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Coroot vectors in cocharacter coordinates, aligned with `roots`.
    pub coroots: Vec<Vec<i64>>,
    /// Indices into `roots` of the ordered simple system.
    pub simple_indices: Vec<usize>,
    /// Expansion of each root over the simple roots (always integral).
    pub simple_coords: Vec<Vec<i64>>,
    weyl_cache: OnceLock<Vec<WeylElement>>,
}

impl PartialEq for BasedRootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.simple_indices == other.simple_indices
    }
}
impl Eq for BasedRootDatum {}

/// Cartan matrix of a simple type, entries c[i][j] = ⟨α_j, α_i∨⟩.
fn cartan_matrix_simple(letter: char, n: usize) -> Result<IMat> {
    let ok = match letter {
        'A' => (1..=8).contains(&n),
        'B' | 'C' => (2..=8).contains(&n),
        'D' => (3..=8).contains(&n),
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !ok {
        return Err(Error::validation(format!(
            "unknown or out-of-range Cartan type {letter}{n}"
        )));
    }
    let mut c = IMat::zero(n, n);
    for i in 0..n {
        c.set(i, i, 2);
    }
    let mut edge = |i: usize, j: usize, cij: i64, cji: i64| {
        // c[i][j] = ⟨α_j, α_i∨⟩
        c.set(i, j, cij);
        c.set(j, i, cji);
    };
    match letter {
        'A' => {
            for i in 0..n - 1 {
                edge(i, i + 1, -1, -1);
            }
        }
        'B' => {
            // α_n short (Bourbaki): ⟨α_{n-1}, α_n∨⟩ = −2.
            for i in 0..n - 2 {
                edge(i, i + 1, -1, -1);
            }
            edge(n - 2, n - 1, -1, -2);
        }
        'C' => {
            // α_n long: ⟨α_n, α_{n-1}∨⟩ = −2.
            for i in 0..n - 2 {
                edge(i, i + 1, -1, -1);
            }
            edge(n - 2, n - 1, -2, -1);
        }
        'D' => {
            for i in 0..n.saturating_sub(3) {
                edge(i, i + 1, -1, -1);
            }
            edge(n - 3, n - 2, -1, -1);
            edge(n - 3, n - 1, -1, -1);
        }
        'E' => {
            // Bourbaki: chain 1–3–4–5–6(–7)(–8), node 2 attached to 4.
            let chain: &[(usize, usize)] = &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
            for &(a, b) in chain.iter().take(n - 2) {
                edge(a, b, -1, -1);
            }
            edge(1, 3, -1, -1);
        }
        'F' => {
            edge(0, 1, -1, -1);
            // α_1, α_2 long; α_3, α_4 short: ⟨α_2, α_3∨⟩ = −2.
            edge(1, 2, -1, -2);
            edge(2, 3, -1, -1);
        }
        'G' => {
            // Bourbaki: α_1 short, α_2 long: ⟨α_2, α_1∨⟩ = −3.
            edge(0, 1, -3, -1);
        }
        _ => unreachable!(),
    }
    Ok(c)
}

/// Cartan matrix for a (possibly composite) type string such as "B2" or "A1xA1".
pub fn cartan_matrix(cartan_type: &str) -> Result<IMat> {
    let mut blocks: Vec<IMat> = Vec::new();
    for part in cartan_type.split(['x', 'X']) {
        let part = part.trim();
        if part.len() < 2 {
            return Err(Error::validation(format!("bad Cartan type `{part}`")));
        }
        let letter = part.chars().next().unwrap().to_ascii_uppercase();
        let n: usize = part[1..]
            .parse()
            .map_err(|_| Error::validation(format!("bad Cartan rank in `{part}`")))?;
        blocks.push(cartan_matrix_simple(letter, n)?);
    }
    let mut it = blocks.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::validation("empty Cartan type"))?;
    Ok(it.fold(first, |acc, b| acc.block_diag(&b)))
}

/// Build a based root datum for the given Cartan type and isogeny.
pub fn build_root_datum(cartan_type: &str, isogeny: Isogeny) -> Result<BasedRootDatum> {
    let c = cartan_matrix(cartan_type)?;
    let n = c.rows;
    // Simply-connected coordinates first: simple root j = column j of the
    // Cartan matrix (fundamental-weight basis), simple coroot j = e_j.
    let simple_roots_sc: Vec<Vec<i64>> = (0..n).map(|j| c.col(j)).collect();
    let simple_coroots_sc: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut e = vec![0i64; n];
            e[j] = 1;
            e
        })
        .collect();
    let basis = match isogeny {
        Isogeny::SimplyConnected => IMat::identity(n),
        Isogeny::Adjoint => c.clone(),
        Isogeny::Basis(b) => {
            if b.rows != n || b.cols != n {
                return Err(Error::validation(format!(
                    "isogeny basis must be {n}x{n}"
                )));
            }
            b
        }
    };
    let binv = basis.to_qmat().inverse().ok_or_else(|| {
        Error::validation("isogeny basis is singular")
    })?;
    // Transform: roots r ↦ B⁻¹r (must stay integral: root lattice inside the
    // chosen lattice), coroots c ↦ Bᵀc.
    let bt = basis.transpose();
    let to_new_root = |r: &[i64]| -> Result<Vec<i64>> {
        let x = binv.mul_vec(&qvec(r));
        if x.iter().any(|v| v.denom() != &1) {
            return Err(Error::validation(
                "isogeny basis does not contain the root lattice",
            ));
        }
        Ok(x.iter().map(|v| *v.numer()).collect())
    };
    let mut simple_roots = Vec::new();
    let mut simple_coroots = Vec::new();
    for j in 0..n {
        simple_roots.push(to_new_root(&simple_roots_sc[j])?);
        simple_coroots.push(bt.mul_vec(&simple_coroots_sc[j]));
    }
    datum_from_simples(n, &simple_roots, &simple_coroots)
}

/// Generate the full root system from a simple system by reflection closure
/// and assemble the datum.
pub fn datum_from_simples(
    rank: usize,
    simple_roots: &[Vec<i64>],
    simple_coroots: &[Vec<i64>],
) -> Result<BasedRootDatum> {
    let k = simple_roots.len();
    assert_eq!(simple_coroots.len(), k);
    for j in 0..k {
        if idot(&simple_roots[j], &simple_coroots[j]) != 2 {
            return Err(Error::validation("⟨α, α∨⟩ ≠ 2 on a simple pair"));
        }
    }
    // BFS closure: track (root, coroot, simple-coordinates) triples.
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut coroots: Vec<Vec<i64>> = Vec::new();
    let mut coords: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    for j in 0..k {
        let mut e = vec![0i64; k];
        e[j] = 1;
        seen.insert(simple_roots[j].clone(), roots.len());
        roots.push(simple_roots[j].clone());
        coroots.push(simple_coroots[j].clone());
        coords.push(e);
    }
    let mut head = 0;
    while head < roots.len() {
        if roots.len() > 500 {
            return Err(Error::internal("root system closure did not terminate"));
        }
        let (r, cr, cd) = (
            roots[head].clone(),
            coroots[head].clone(),
            coords[head].clone(),
        );
        head += 1;
        for j in 0..k {
            let p = idot(&r, &simple_coroots[j]);
            let mut r2 = r.clone();
            for (x, &a) in r2.iter_mut().zip(simple_roots[j].iter()) {
                *x -= p * a;
            }
            if seen.contains_key(&r2) {
                continue;
            }
            let q = idot(&simple_roots[j], &cr);
            let mut cr2 = cr.clone();
            for (x, &a) in cr2.iter_mut().zip(simple_coroots[j].iter()) {
                *x -= q * a;
            }
            let mut cd2 = cd.clone();
            cd2[j] -= p;
            seen.insert(r2.clone(), roots.len());
            roots.push(r2);
            coroots.push(cr2);
            coords.push(cd2);
        }
        // Also close under negation (s_j never sends a simple to an arbitrary
        // negative directly, but the closure above reaches all of them;
        // negation is included for safety on degenerate inputs).
        let rn: Vec<i64> = r.iter().map(|x| -x).collect();
        if !seen.contains_key(&rn) {
            seen.insert(rn.clone(), roots.len());
            roots.push(rn);
            coroots.push(cr.iter().map(|x| -x).collect());
            coords.push(cd.iter().map(|x| -x).collect());
        }
    }
    let simple_indices = (0..k).collect();
    let d = BasedRootDatum {
        rank,
        roots,
        coroots,
        simple_indices,
        simple_coords: coords,
        weyl_cache: OnceLock::new(),
    };
    d.validate()?;
    Ok(d)
}

impl BasedRootDatum {
    /// Datum with an explicitly given root list (used for Levi subsystems and
    /// endoscopic subdata living on the same lattice).
    pub fn from_parts(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple_indices: Vec<usize>,
    ) -> Result<BasedRootDatum> {
        // Recompute simple coordinates by a rational solve.
        let k = simple_indices.len();
        let smat = QMat::from_cols(
            &simple_indices
                .iter()
                .map(|&i| qvec(&roots[i]))
                .collect::<Vec<_>>(),
        );
        let mut simple_coords = Vec::new();
        for r in &roots {
            if k == 0 {
                return Err(Error::validation("nonempty roots need a simple system"));
            }
            let x = smat
                .solve(&qvec(r))
                .ok_or_else(|| Error::validation("root outside span of simple system"))?;
            if x.iter().any(|v| v.denom() != &1) {
                return Err(Error::validation("root not integral over simple system"));
            }
            simple_coords.push(x.iter().map(|v| *v.numer()).collect());
        }
        let d = BasedRootDatum {
            rank,
            roots,
            coroots,
            simple_indices,
            simple_coords,
            weyl_cache: OnceLock::new(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn empty(rank: usize) -> BasedRootDatum {
        BasedRootDatum {
            rank,
            roots: Vec::new(),
            coroots: Vec::new(),
            simple_indices: Vec::new(),
            simple_coords: Vec::new(),
            weyl_cache: OnceLock::new(),
        }
    }

    pub fn n_simples(&self) -> usize {
        self.simple_indices.len()
    }
    pub fn simple_root(&self, k: usize) -> &[i64] {
        &self.roots[self.simple_indices[k]]
    }
    pub fn simple_coroot(&self, k: usize) -> &[i64] {
        &self.coroots[self.simple_indices[k]]
    }
    /// Cartan matrix c[i][j] = ⟨α_j, α_i∨⟩ of the simple system.
    pub fn cartan(&self) -> IMat {
        let k = self.n_simples();
        let mut c = IMat::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                c.set(i, j, idot(self.simple_root(j), self.simple_coroot(i)));
            }
        }
        c
    }
    pub fn is_positive(&self, root_idx: usize) -> bool {
        self.simple_coords[root_idx].iter().all(|&x| x >= 0)
            && self.simple_coords[root_idx].iter().any(|&x| x > 0)
    }
    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).collect()
    }
    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    fn validate(&self) -> Result<()> {
        for (r, c) in self.roots.iter().zip(self.coroots.iter()) {
            if idot(r, c) != 2 {
                return Err(Error::internal("⟨α, α∨⟩ ≠ 2"));
            }
        }
        // Simple system linearly independent.
        let smat = QMat::from_cols(
            &self
                .simple_indices
                .iter()
                .map(|&i| qvec(&self.roots[i]))
                .collect::<Vec<_>>(),
        );
        if !smat.kernel().is_empty() {
            return Err(Error::internal("simple system linearly dependent"));
        }
        // Every root positive or negative over the simples.
        for cd in &self.simple_coords {
            let pos = cd.iter().any(|&x| x > 0);
            let neg = cd.iter().any(|&x| x < 0);
            if pos && neg {
                return Err(Error::internal("root neither positive nor negative"));
            }
        }
        Ok(())
    }

    /// Simple reflection s_k on the character lattice.
    pub fn reflect_char(&self, k: usize, v: &[Rat]) -> Vec<Rat> {
        let p = dot_iq(self.simple_coroot(k), v);
        v.iter()
            .zip(self.simple_root(k))
            .map(|(x, &a)| *x - p * Rat::from_integer(a))
            .collect()
    }
    /// Simple reflection s_k on the cocharacter lattice.
    pub fn reflect_cochar(&self, k: usize, v: &[Rat]) -> Vec<Rat> {
        let p = dot_iq(self.simple_root(k), v);
        v.iter()
            .zip(self.simple_coroot(k))
            .map(|(x, &a)| *x - p * Rat::from_integer(a))
            .collect()
    }

    /// The simple reflection s_k as a WeylElement.
    pub fn weyl_simple(&self, k: usize) -> WeylElement {
        let n = self.rank;
        let mut mc = IMat::identity(n);
        let mut mcc = IMat::identity(n);
        let alpha = self.simple_root(k);
        let alpha_v = self.simple_coroot(k);
        for i in 0..n {
            for j in 0..n {
                mc.set(i, j, mc.get(i, j) - alpha[i] * alpha_v[j]);
                mcc.set(i, j, mcc.get(i, j) - alpha_v[i] * alpha[j]);
            }
        }
        WeylElement { word: vec![k], mat_char: mc, mat_cochar: mcc }
    }

    /// All Weyl group elements, words reduced (BFS over the Cayley graph).
    pub fn weyl_elements(&self) -> &Vec<WeylElement> {
        self.weyl_cache.get_or_init(|| {
            let k = self.n_simples();
            let gens: Vec<WeylElement> = (0..k).map(|i| self.weyl_simple(i)).collect();
            let mut elements = vec![WeylElement::identity(self.rank)];
            let mut seen: HashMap<IMat, usize> = HashMap::new();
            seen.insert(elements[0].mat_char.clone(), 0);
            let mut head = 0;
            while head < elements.len() {
                let cur = elements[head].clone();
                head += 1;
                for g in &gens {
                    // Right multiplication keeps BFS words reduced.
                    let nxt = cur.compose(g);
                    if !seen.contains_key(&nxt.mat_char) {
                        seen.insert(nxt.mat_char.clone(), elements.len());
                        elements.push(nxt);
                    }
                }
                assert!(elements.len() <= 1 << 22, "Weyl group too large");
            }
            elements
        })
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_elements().len()
    }

    /// Find the enumerated element with the given character-lattice action.
    pub fn find_weyl(&self, mat_char: &IMat) -> Option<WeylElement> {
        self.weyl_elements()
            .iter()
            .find(|w| &w.mat_char == mat_char)
            .cloned()
    }

    /// Replace the word of `w` by a reduced one from the enumeration.
    pub fn canonicalize_weyl(&self, w: &WeylElement) -> WeylElement {
        self.find_weyl(&w.mat_char)
            .expect("matrix is not a Weyl group element")
    }

    /// The longest element w₀.
    pub fn longest_element(&self) -> WeylElement {
        self.weyl_elements()
            .iter()
            .max_by_key(|w| w.length())
            .cloned()
            .unwrap_or_else(|| WeylElement::identity(self.rank))
    }

    /// All reduced words of `w`, by descent recursion.
    pub fn reduced_words(&self, w: &WeylElement) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 0..self.n_simples() {
            // k is a left descent iff ℓ(s_k w) < ℓ(w) iff w⁻¹(α_k) < 0.
            let img = w.inverse().apply_char(&qvec(self.simple_root(k)));
            let img_i: Vec<i64> = img.iter().map(|x| *x.numer()).collect();
            let idx = self.root_index(&img_i).expect("Weyl image of root is a root");
            if !self.is_positive(idx) {
                let rest = self.canonicalize_weyl(&self.weyl_simple(k).compose(w));
                for mut tail in self.reduced_words(&rest) {
                    let mut word = vec![k];
                    word.append(&mut tail);
                    out.push(word);
                }
            }
        }
        out
    }

    /// The dual datum: swap lattices and roots/coroots.
    pub fn dual_datum(&self) -> BasedRootDatum {
        BasedRootDatum {
            rank: self.rank,
            roots: self.coroots.clone(),
            coroots: self.roots.clone(),
            simple_indices: self.simple_indices.clone(),
            simple_coords: self.simple_coords.clone(),
            weyl_cache: OnceLock::new(),
        }
    }

    /// Levi subsystem generated by a subset of simple indices.
    pub fn levi(&self, simple_subset: &[usize]) -> LeviSubset {
        let root_indices = (0..self.roots.len())
            .filter(|&i| {
                self.simple_coords[i]
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || simple_subset.contains(&j))
            })
            .collect();
        LeviSubset {
            simple_subset: simple_subset.to_vec(),
            root_indices,
        }
    }

    /// The Levi as a datum on the same lattices.
    pub fn levi_datum(&self, levi: &LeviSubset) -> BasedRootDatum {
        if levi.simple_subset.is_empty() {
            return BasedRootDatum::empty(self.rank);
        }
        let roots: Vec<Vec<i64>> = levi
            .root_indices
            .iter()
            .map(|&i| self.roots[i].clone())
            .collect();
        let coroots: Vec<Vec<i64>> = levi
            .root_indices
            .iter()
            .map(|&i| self.coroots[i].clone())
            .collect();
        let simple_indices: Vec<usize> = levi
            .simple_subset
            .iter()
            .map(|&k| {
                roots
                    .iter()
                    .position(|r| r == &self.roots[self.simple_indices[k]])
                    .expect("simple root present in Levi")
            })
            .collect();
        BasedRootDatum::from_parts(self.rank, roots, coroots, simple_indices)
            .expect("Levi subsystem is a valid datum")
    }

    /// One-half the sum of the positive coroots of the Levi subset.
    pub fn half_sum_coroots(&self, levi: &LeviSubset) -> Vec<Rat> {
        let mut acc = vec![Rat::zero(); self.rank];
        for &i in &levi.root_indices {
            if self.is_positive(i) {
                for (a, &c) in acc.iter_mut().zip(self.coroots[i].iter()) {
                    *a += Rat::new(c, 2);
                }
            }
        }
        acc
    }

    pub fn full_levi(&self) -> LeviSubset {
        self.levi(&(0..self.n_simples()).collect::<Vec<_>>())
    }

    /// Make `v` dominant; returns the dominant vector and w with w(v) dominant.
    /// `cochar` selects which lattice `v` lives in.
    pub fn make_dominant(&self, v: &[Rat], cochar: bool) -> (Vec<Rat>, WeylElement) {
        let mut cur = v.to_vec();
        let mut w = WeylElement::identity(self.rank);
        loop {
            let mut moved = false;
            for k in 0..self.n_simples() {
                let p = if cochar {
                    dot_iq(self.simple_root(k), &cur)
                } else {
                    dot_iq(self.simple_coroot(k), &cur)
                };
                if p < Rat::zero() {
                    cur = if cochar {
                        self.reflect_cochar(k, &cur)
                    } else {
                        self.reflect_char(k, &cur)
                    };
                    w = self.weyl_simple(k).compose(&w);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        (cur, w)
    }

    /// The reflection through an arbitrary root, with a reduced word.
    pub fn reflection_of_root(&self, root_idx: usize) -> WeylElement {
        let n = self.rank;
        let alpha = &self.roots[root_idx];
        let alpha_v = &self.coroots[root_idx];
        let mut mc = IMat::identity(n);
        let mut mcc = IMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                mc.set(i, j, mc.get(i, j) - alpha[i] * alpha_v[j]);
                mcc.set(i, j, mcc.get(i, j) - alpha_v[i] * alpha[j]);
            }
        }
        self.canonicalize_weyl(&WeylElement { word: Vec::new(), mat_char: mc, mat_cochar: mcc })
    }

    /// Indecomposable positive roots of a subsystem given by root indices
    /// (assumed closed under negation and reflection within itself).
    pub fn subsystem_simples(&self, root_indices: &[usize]) -> Vec<usize> {
        let pos: Vec<usize> = root_indices
            .iter()
            .copied()
            .filter(|&i| self.is_positive(i))
            .collect();
        pos.iter()
            .copied()
            .filter(|&b| {
                !pos.iter().any(|&g| {
                    pos.iter().any(|&d| {
                        g != b
                            && d != b
                            && self.roots[g]
                                .iter()
                                .zip(&self.roots[d])
                                .map(|(x, y)| x + y)
                                .collect::<Vec<i64>>()
                                == self.roots[b]
                    })
                })
            })
            .collect()
    }

    /// Half-sum of the positive coroots among the given root indices.
    pub fn half_sum_coroots_of(&self, root_indices: &[usize]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.rank];
        for &i in root_indices {
            if self.is_positive(i) {
                for (a, &c) in v.iter_mut().zip(&self.coroots[i]) {
                    *a += Rat::new(c, 2);
                }
            }
        }
        v
    }

    /// Longest element of the reflection subgroup generated by a subsystem.
    pub fn longest_in_subsystem(&self, root_indices: &[usize]) -> WeylElement {
        let simples = self.subsystem_simples(root_indices);
        // Greedily send the subsystem half-sum of positive coroots negative.
        let mut v = vec![Rat::zero(); self.rank];
        for &i in root_indices {
            if self.is_positive(i) {
                for (a, &c) in v.iter_mut().zip(&self.coroots[i]) {
                    *a += Rat::new(c, 2);
                }
            }
        }
        let mut w = WeylElement::identity(self.rank);
        loop {
            let mut moved = false;
            for &b in &simples {
                if dot_iq(&self.roots[b], &v) > Rat::zero() {
                    let s = self.reflection_of_root(b);
                    v = s.apply_cochar(&v);
                    w = s.compose(&w);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        self.canonicalize_weyl(&w)
    }

    pub fn is_dominant(&self, v: &[Rat], cochar: bool) -> bool {
        (0..self.n_simples()).all(|k| {
            let p = if cochar {
                dot_iq(self.simple_root(k), v)
            } else {
                dot_iq(self.simple_coroot(k), v)
            };
            p >= Rat::zero()
        })
    }
}

/// A closed Levi subsystem: the roots supported on a subset of simples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviSubset {
    pub simple_subset: Vec<usize>,
    pub root_indices: Vec<usize>,
}

impl LeviSubset {
    pub fn contains_root(&self, idx: usize) -> bool {
        self.root_indices.contains(&idx)
    }
}
