use std::collections::{BTreeSet, VecDeque};

use crate::linalg::{c, hermitian_eigen, C64, I, ZERO};

use super::jw::{jordan_wigner, jw_creation, vacuum_state, ModeOrdering};
use super::{FermionError, FermionOp, FermionPolynomial, PauliSum, DENSE_MODE_CAP};

/// Sites joined by links, each link carrying one auxiliary mode at either end.
///
/// Modes are numbered site by site: the site's physical modes first, then one auxiliary
/// mode per incident link in link order. Under the linear ordering every site's modes are
/// therefore consecutive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajoranaLayout {
    n_sites: usize,
    physical_per_site: usize,
    links: Vec<(usize, usize)>,
    site_start: Vec<usize>,
    site_of_mode: Vec<usize>,
    aux: Vec<(usize, usize)>,
}

impl MajoranaLayout {
    pub fn new(
        n_sites: usize,
        physical_per_site: usize,
        links: Vec<(usize, usize)>,
    ) -> Result<Self, FermionError> {
        let mut canon = Vec::with_capacity(links.len());
        for (n, m) in links {
            if n == m || n >= n_sites || m >= n_sites {
                return Err(FermionError::InvalidParameter(format!("bad link ({n},{m})")));
            }
            let l = (n.min(m), n.max(m));
            if canon.contains(&l) {
                return Err(FermionError::InvalidParameter(format!("duplicate link {l:?}")));
            }
            canon.push(l);
        }
        let mut site_start = Vec::with_capacity(n_sites);
        let mut site_of_mode = Vec::new();
        let mut aux = Vec::with_capacity(2 * canon.len());
        for s in 0..n_sites {
            site_start.push(site_of_mode.len());
            site_of_mode.extend(std::iter::repeat_n(s, physical_per_site));
            for &(n, m) in &canon {
                if n == s || m == s {
                    let other = if n == s { m } else { n };
                    aux.push((s, other));
                    site_of_mode.push(s);
                }
            }
        }
        Ok(Self {
            n_sites,
            physical_per_site,
            links: canon,
            site_start,
            site_of_mode,
            aux,
        })
    }

    /// Open-boundary nearest-neighbour grid, sites in row-major order.
    pub fn grid(extents: &[usize], physical_per_site: usize) -> Result<Self, FermionError> {
        let n_sites: usize = extents.iter().product();
        let mut links = Vec::new();
        for s in 0..n_sites {
            let mut stride = 1;
            for axis in (0..extents.len()).rev() {
                let coord = (s / stride) % extents[axis];
                if coord + 1 < extents[axis] {
                    links.push((s, s + stride));
                }
                stride *= extents[axis];
            }
        }
        links.sort_unstable();
        Self::new(n_sites, physical_per_site, links)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn n_modes(&self) -> usize {
        self.site_of_mode.len()
    }

    pub fn n_physical(&self) -> usize {
        self.n_sites * self.physical_per_site
    }

    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    pub fn site_of_mode(&self, mode: usize) -> usize {
        self.site_of_mode[mode]
    }

    /// Layout mode of physical mode `i` on `site`.
    pub fn physical_mode(&self, site: usize, i: usize) -> usize {
        self.site_start[site] + i
    }

    /// Mode `a_(site, other)` living on `site`.
    pub fn aux_mode(&self, site: usize, other: usize) -> Option<usize> {
        let mut mode = self.site_start[site] + self.physical_per_site;
        for &(s, o) in self.aux.iter().filter(|(s, _)| *s == site) {
            if s == site && o == other {
                return Some(mode);
            }
            mode += 1;
        }
        None
    }

    /// `M_(n,m) = i c_(n,m) c_(m,n)` for the stored orientation `n < m`.
    pub fn link_operator(&self, link: usize) -> FermionPolynomial {
        let (n, m) = self.links[link];
        let cn = FermionPolynomial::majorana(self.aux_mode(n, m).expect("link mode"));
        let cm = FermionPolynomial::majorana(self.aux_mode(m, n).expect("link mode"));
        (cn * cm).scale(I)
    }

    /// Links along the lexicographically first shortest path from `from` to `to`.
    pub fn path(&self, from: usize, to: usize) -> Result<Vec<usize>, FermionError> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.n_sites];
        let mut seen = vec![false; self.n_sites];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            if s == to {
                break;
            }
            let mut next: Vec<(usize, usize)> = self
                .links
                .iter()
                .enumerate()
                .filter_map(|(li, &(n, m))| {
                    if n == s {
                        Some((m, li))
                    } else if m == s {
                        Some((n, li))
                    } else {
                        None
                    }
                })
                .collect();
            next.sort_unstable();
            for (t, li) in next {
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, li));
                    queue.push_back(t);
                }
            }
        }
        if !seen[to] {
            return Err(FermionError::NoPath { from, to });
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((p, li)) = prev[cur] {
            path.push(li);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    fn physical_to_layout(&self, mode: usize) -> usize {
        self.physical_mode(mode / self.physical_per_site, mode % self.physical_per_site)
    }
}

/// Locality of one encoded term.
#[derive(Debug, Clone, PartialEq)]
pub struct TermAudit {
    /// Sites whose qubits the term's Pauli image touches.
    pub sites: BTreeSet<usize>,
    /// Sites of the term's operators together with the sites along inserted paths.
    pub allowed: BTreeSet<usize>,
    pub local: bool,
}

#[derive(Debug, Clone)]
pub struct LocalizedModel {
    pub layout: MajoranaLayout,
    /// Transformed Hamiltonian on all layout modes.
    pub polynomial: FermionPolynomial,
    /// Its Jordan–Wigner image under the site-consecutive ordering.
    pub pauli: PauliSum,
    pub audits: Vec<TermAudit>,
}

impl LocalizedModel {
    pub fn is_local(&self) -> bool {
        self.audits.iter().all(|a| a.local)
    }
}

/// Inserts link operators between successive pairs of operators in every term of `h`.
///
/// `h` uses physical numbering `site · physical_per_site + i`. Each consecutive pair
/// `o_{2j} o_{2j+1}` gets the product of `M` over the path from the second operator's site
/// to the first's, which leaves the term unchanged on the joint `+1` sector of all `M`.
pub fn majorana_localize(
    h: &FermionPolynomial,
    layout: &MajoranaLayout,
) -> Result<LocalizedModel, FermionError> {
    if !h.is_even() {
        return Err(FermionError::OddParity);
    }
    if !h.is_hermitian(1e-12) {
        return Err(FermionError::NotHermitian);
    }
    if let Some(&m) = h.modes().iter().find(|&&m| m >= layout.n_physical()) {
        return Err(FermionError::UnknownMode(m));
    }
    let ordering = ModeOrdering::linear(layout.n_modes());
    let mut polynomial = FermionPolynomial::zero();
    let mut pauli = PauliSum::zero();
    let mut audits = Vec::new();
    let link_ops: Vec<FermionPolynomial> =
        (0..layout.links.len()).map(|l| layout.link_operator(l)).collect();
    for (word, coeff) in h.terms() {
        let mut term = FermionPolynomial::scalar(coeff);
        let mut allowed = BTreeSet::new();
        for pair in word.chunks(2) {
            let ops: Vec<FermionOp> = pair
                .iter()
                .map(|o| FermionOp {
                    mode: layout.physical_to_layout(o.mode),
                    dagger: o.dagger,
                })
                .collect();
            let s0 = layout.site_of_mode(ops[0].mode);
            let s1 = layout.site_of_mode(ops[1].mode);
            allowed.insert(s0);
            allowed.insert(s1);
            term = term * FermionPolynomial::monomial(c(1.0, 0.0), &ops[..1]);
            for li in layout.path(s1, s0)? {
                let (n, m) = layout.links[li];
                allowed.insert(n);
                allowed.insert(m);
                term = term * link_ops[li].clone();
            }
            term = term * FermionPolynomial::monomial(c(1.0, 0.0), &ops[1..]);
        }
        let image = jordan_wigner(&term, &ordering)?;
        let sites: BTreeSet<usize> =
            image.support().into_iter().map(|q| layout.site_of_mode(q)).collect();
        audits.push(TermAudit {
            local: sites.is_subset(&allowed),
            sites,
            allowed,
        });
        polynomial = polynomial + term;
        pauli = pauli + image;
    }
    Ok(LocalizedModel {
        layout: layout.clone(),
        polynomial,
        pauli,
        audits,
    })
}

/// `Π_links (c_(n,m) − i c_(m,n))/√2 |0⟩` as a dense qubit state (bit `k` is mode `k`).
pub fn invariant_state(layout: &MajoranaLayout) -> Result<Vec<C64>, FermionError> {
    let n = layout.n_modes();
    if n > DENSE_MODE_CAP {
        return Err(FermionError::TooManyModes {
            modes: n,
            max: DENSE_MODE_CAP,
        });
    }
    let ordering = ModeOrdering::linear(n);
    let mut state = vacuum_state(n);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for &(a, b) in &layout.links {
        let cn = FermionPolynomial::majorana(layout.aux_mode(a, b).expect("mode"));
        let cm = FermionPolynomial::majorana(layout.aux_mode(b, a).expect("mode"));
        let op = (cn - cm.scale(I)).scale(c(h, 0.0));
        state = jordan_wigner(&op, &ordering)?.apply(&state);
    }
    Ok(state)
}

/// Spectrum of the localized Hamiltonian on the states `Π ψ† |invariant⟩` built from every
/// occupation pattern of the physical modes.
pub fn invariant_sector_spectrum(model: &LocalizedModel) -> Result<Vec<f64>, FermionError> {
    let layout = &model.layout;
    let omega = invariant_state(layout)?;
    let ordering = ModeOrdering::linear(layout.n_modes());
    let p = layout.n_physical();
    let creators: Vec<PauliSum> = (0..p)
        .map(|m| jw_creation(layout.physical_to_layout(m), &ordering))
        .collect::<Result<_, _>>()?;
    let basis: Vec<Vec<C64>> = (0..1usize << p)
        .map(|pattern| {
            let mut s = omega.clone();
            for m in (0..p).rev() {
                if pattern >> m & 1 == 1 {
                    s = creators[m].apply(&s);
                }
            }
            s
        })
        .collect();
    let dim = basis.len();
    let mut hm = crate::linalg::CMat::zeros(dim, dim);
    for (j, bj) in basis.iter().enumerate() {
        let hb = model.pauli.apply(bj);
        for (i, bi) in basis.iter().enumerate() {
            hm[(i, j)] = bi.iter().zip(&hb).fold(ZERO, |acc, (x, y)| acc + x.conj() * y);
        }
    }
    Ok(hermitian_eigen(&hm).0)
}

/// Gates of the invariant-state preparation circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    Sdg(usize),
    Cnot { control: usize, target: usize },
    /// `X` on `target` when `control` is `|0⟩`.
    NegCnot { control: usize, target: usize },
    Cz { control: usize, target: usize },
    /// `Z` on `target` when `control` is `|0⟩`.
    NegCz { control: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    /// Ancilla selecting which Majorana to apply.
    pub ancilla: usize,
    /// Flag holding the parity of a Jordan–Wigner string.
    pub flag: usize,
    pub gates: Vec<Gate>,
}

/// Prepares the invariant state using one ancilla and one parity flag. Each Majorana's
/// `Z` string is copied onto the flag with CNOTs so it acts as a two-qubit gate, and the
/// ancilla is returned to `|0⟩` by a CNOT from the second link mode.
pub fn invariant_state_circuit(layout: &MajoranaLayout) -> Circuit {
    let n = layout.n_modes();
    let (anc, flag) = (n, n + 1);
    let mut gates = Vec::new();
    let controlled_majorana = |gates: &mut Vec<Gate>, q: usize, negative: bool| {
        for j in 0..q {
            gates.push(Gate::Cnot { control: j, target: flag });
        }
        if negative {
            gates.push(Gate::NegCnot { control: anc, target: q });
            gates.push(Gate::NegCz { control: anc, target: flag });
        } else {
            gates.push(Gate::Cnot { control: anc, target: q });
            gates.push(Gate::Cz { control: anc, target: flag });
        }
        for j in (0..q).rev() {
            gates.push(Gate::Cnot { control: j, target: flag });
        }
    };
    for &(a, b) in &layout.links {
        let qa = layout.aux_mode(a, b).expect("mode");
        let qb = layout.aux_mode(b, a).expect("mode");
        gates.push(Gate::H(anc));
        gates.push(Gate::Sdg(anc));
        controlled_majorana(&mut gates, qa, true);
        controlled_majorana(&mut gates, qb, false);
        gates.push(Gate::Cnot { control: qb, target: anc });
    }
    Circuit {
        n_qubits: n + 2,
        ancilla: anc,
        flag,
        gates,
    }
}

/// Dense simulation from `|0…0⟩`.
pub fn simulate(circuit: &Circuit) -> Result<Vec<C64>, FermionError> {
    if circuit.n_qubits > DENSE_MODE_CAP + 2 {
        return Err(FermionError::TooManyModes {
            modes: circuit.n_qubits,
            max: DENSE_MODE_CAP + 2,
        });
    }
    let mut s = vacuum_state(circuit.n_qubits);
    let bit = |b: usize, q: usize| b >> q & 1 == 1;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for g in &circuit.gates {
        match *g {
            Gate::H(q) => {
                for b in 0..s.len() {
                    if !bit(b, q) {
                        let (x, y) = (s[b], s[b | 1 << q]);
                        s[b] = (x + y) * h;
                        s[b | 1 << q] = (x - y) * h;
                    }
                }
            }
            Gate::Sdg(q) => {
                for (b, amp) in s.iter_mut().enumerate() {
                    if bit(b, q) {
                        *amp *= -I;
                    }
                }
            }
            Gate::Cnot { control, target } | Gate::NegCnot { control, target } => {
                let want = matches!(g, Gate::Cnot { .. });
                for b in 0..s.len() {
                    if bit(b, control) == want && !bit(b, target) {
                        s.swap(b, b | 1 << target);
                    }
                }
            }
            Gate::Cz { control, target } | Gate::NegCz { control, target } => {
                let want = matches!(g, Gate::Cz { .. });
                for (b, amp) in s.iter_mut().enumerate() {
                    if bit(b, control) == want && bit(b, target) {
                        *amp = -*amp;
                    }
                }
            }
        }
    }
    Ok(s)
}
