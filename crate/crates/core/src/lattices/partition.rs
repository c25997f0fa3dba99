use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattices::skeleton::Skeleton;
use crate::limits::Limits;
use crate::poset::{build_poset_with, moebius_matrix_with, FinitePoset, Verification, ZetaPair};

/// A set partition of `{1..n}`, stored as its restricted-growth string.
///
/// `rgs[i]` is the block of element `i+1`; blocks are numbered in order of
/// first appearance, so `rgs[0] = 0` and `rgs[i] ≤ 1 + max(rgs[..i])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rgs: Vec<u8>,
}

impl Partition {
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        let mut max: Option<u8> = None;
        for &x in &rgs {
            let next = max.map_or(0, |m| m + 1);
            if x > next {
                return Err(Error::InvalidPartition(format!(
                    "{rgs:?} is not a restricted-growth string"
                )));
            }
            max = Some(max.map_or(x, |m| m.max(x)));
        }
        Ok(Self { rgs })
    }

    /// Builds the canonical form from atoms over `{1..n}` (1-based).
    pub fn from_atoms(n: usize, atoms: &[Vec<usize>]) -> Result<Self> {
        let mut block = vec![usize::MAX; n];
        for (k, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(Error::InvalidPartition("empty atom".into()));
            }
            for &i in atom {
                if i == 0 || i > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} outside 1..{n}"
                    )));
                }
                if block[i - 1] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {i} in two atoms")));
                }
                block[i - 1] = k;
            }
        }
        if let Some(i) = block.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {} not covered",
                i + 1
            )));
        }
        Ok(Self::canonical(&block))
    }

    /// Canonical form of an arbitrary block labelling.
    pub fn canonical<T: PartialEq + Copy>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(k) => k as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Self { rgs }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            rgs: (0..n as u8).collect(),
        }
    }

    pub fn one_block(n: usize) -> Self {
        Self { rgs: vec![0; n] }
    }

    pub fn ground_size(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    /// Number of atoms `[α]`.
    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Atoms as bitmasks (bit `i` for element `i+1`), in block order.
    pub fn atom_masks(&self) -> Vec<u32> {
        let mut masks = vec![0u32; self.block_count()];
        for (i, &b) in self.rgs.iter().enumerate() {
            masks[b as usize] |= 1 << i;
        }
        masks
    }

    /// Atoms as sorted 1-based element lists.
    pub fn atoms(&self) -> Vec<Vec<usize>> {
        let mut atoms = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.rgs.iter().enumerate() {
            atoms[b as usize].push(i + 1);
        }
        atoms
    }

    /// `self ⪯ other`: every atom of `self` lies inside an atom of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.rgs.len() != other.rgs.len() {
            return false;
        }
        let mut image = vec![u8::MAX; self.block_count()];
        for (&a, &b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    pub fn skeleton(&self) -> Skeleton {
        skeleton(self)
    }

    pub fn rgs_string(&self) -> String {
        let parts: Vec<String> = self.rgs.iter().map(u8::to_string).collect();
        parts.join(",")
    }
}

impl fmt::Display for Partition {
    /// Atom notation, e.g. `{1 2}{3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for atom in self.atoms() {
            let items: Vec<String> = atom.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", items.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts RGS digits (`0,0,1`) or atom notation (`{1 2}{3}`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let mut atoms = Vec::new();
            for chunk in s.split('}').map(str::trim).filter(|c| !c.is_empty()) {
                let body = chunk
                    .strip_prefix('{')
                    .ok_or_else(|| Error::Parse(format!("bad atom {chunk:?}")))?;
                let atom = body
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad element {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                atoms.push(atom);
            }
            let n = atoms.iter().map(Vec::len).sum();
            Partition::from_atoms(n, &atoms)
        } else {
            let rgs = s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad RGS digit {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Partition::from_rgs(rgs)
        }
    }
}

pub fn skeleton(alpha: &Partition) -> Skeleton {
    let mut sizes = vec![0usize; alpha.block_count()];
    for &b in alpha.rgs() {
        sizes[b as usize] += 1;
    }
    Skeleton::from_parts(sizes).expect("atoms are nonempty")
}

/// All partitions of `{1..n}` in lexicographic RGS order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0u8; n];
    fn rec(pos: usize, max: u8, rgs: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if pos == rgs.len() {
            out.push(Partition { rgs: rgs.clone() });
            return;
        }
        for v in 0..=max + 1 {
            rgs[pos] = v;
            rec(pos + 1, max.max(v), rgs, out);
        }
    }
    if n == 0 {
        out.push(Partition { rgs });
    } else {
        rec(1, 0, &mut rgs, &mut out);
    }
    out
}

/// `μ(α,β) = (-1)^{[α]+[β]} ∏_{B∈β} (ℓ_B^α - 1)!` for `α ⪯ β`.
pub fn partition_moebius_closed_form(alpha: &Partition, beta: &Partition) -> Result<i64> {
    if !alpha.refines(beta) {
        return Err(Error::NotComparable);
    }
    // ℓ_B^α: number of α-atoms inside each β-atom.
    let mut inside = vec![0i64; beta.block_count()];
    let mut counted = vec![false; alpha.block_count()];
    for (&a, &b) in alpha.rgs().iter().zip(beta.rgs()) {
        if !counted[a as usize] {
            counted[a as usize] = true;
            inside[b as usize] += 1;
        }
    }
    let product: i64 = inside.iter().map(|&l| (1..l).product::<i64>()).product();
    let sign = if (alpha.block_count() + beta.block_count()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(sign * product)
}

/// The partition lattice `(𝔄(I), ⪯)` ordered by refinement.
///
/// Indexed by (`[α]` descending, RGS lexicographic): the all-singletons
/// partition comes first and `{I}` last.
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    n: usize,
    partitions: Vec<Partition>,
    poset: FinitePoset,
}

pub fn partition_lattice(n: usize) -> Result<PartitionLattice> {
    partition_lattice_with(n, &Limits::default())
}

pub fn partition_lattice_with(n: usize, limits: &Limits) -> Result<PartitionLattice> {
    if n == 0 {
        return Err(Error::InvalidPartition(
            "ground set must be nonempty".into(),
        ));
    }
    limits.check("partition lattice ground set", n, limits.partition_n)?;
    let all = enumerate_partitions(n);
    let labels: Vec<PartitionLabel> = all.iter().map(|p| PartitionLabel(p.clone())).collect();
    let poset = build_poset_with(
        &labels,
        |a, b| a.0.refines(&b.0),
        Verification::Auto,
        limits,
    )?;
    let partitions = (0..poset.len())
        .map(|i| all[poset.source_position(i)].clone())
        .collect();
    Ok(PartitionLattice {
        n,
        partitions,
        poset,
    })
}

impl PartitionLattice {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.partitions[i]
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.poset.index_of(&p.to_string())
    }

    pub fn zeta_pair(&self, limits: &Limits) -> Result<ZetaPair> {
        moebius_matrix_with(&self.poset, limits)
    }
}

struct PartitionLabel(Partition);

impl fmt::Display for PartitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
