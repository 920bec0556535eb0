//! Deterministic test corpora.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cylinder::{cylinder_reduction, example_non_injective, example_non_surjective};
use crate::sset::{
    boundary, collapse_face, disjoint_union, find_isomorphism, parse_sset, print_sset, sphere, standard_simplex,
    Congruence, SimplicialSet, SsetError,
};
use crate::subdivision::sd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Builtin,
    RandomQuotient,
    SdImage,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Builtin => "builtin",
            Provenance::RandomQuotient => "random-quotient",
            Provenance::SdImage => "sd-image",
        })
    }
}

impl std::str::FromStr for Provenance {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "builtin" => Ok(Provenance::Builtin),
            "random-quotient" => Ok(Provenance::RandomQuotient),
            "sd-image" => Ok(Provenance::SdImage),
            other => Err(format!("unknown provenance {other}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub provenance: Provenance,
    pub set: Arc<SimplicialSet>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub members: Vec<Member>,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusParams {
    /// Number of random quotients to draw.
    pub random_quotients: usize,
    /// Largest number of cells kept in a random quotient.
    pub max_quotient_cells: usize,
    /// Largest dimension of a simplex in a random base.
    pub max_base_dim: usize,
    /// Sd-images larger than this are dropped.
    pub max_sd_cells: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            random_quotients: 24,
            max_quotient_cells: 12,
            max_base_dim: 3,
            max_sd_cells: 200,
        }
    }
}

fn builtins() -> Vec<(String, SimplicialSet)> {
    let mut out = Vec::new();
    for n in 0..=3 {
        out.push((format!("delta{n}"), standard_simplex(n)));
    }
    for n in 1..=3 {
        out.push((format!("boundary{n}"), (*boundary(n).set).clone()));
    }
    for n in 1..=3 {
        out.push((format!("sphere{n}"), sphere(n).expect("n >= 1")));
    }
    for n in 2..=3 {
        for i in 0..=n {
            out.push((format!("collapse{n}_{i}"), collapse_face(n, i).expect("face index in range")));
        }
    }
    let b = cylinder_reduction(&example_non_surjective()).expect("example cylinder");
    out.push(("ex_nonsurj_T".into(), (**b.t()).clone()));
    out.push(("ex_nonsurj_M".into(), (**b.m()).clone()));
    let b = cylinder_reduction(&example_non_injective()).expect("example cylinder");
    out.push(("ex_noninj_T".into(), (**b.t()).clone()));
    out
}

/// Glue a few standard simplices and identify random pairs of simplices of equal degree.
pub fn random_quotient(rng: &mut ChaCha8Rng, max_dim: usize, name: &str) -> SimplicialSet {
    let k = rng.gen_range(1..=2);
    let parts: Vec<SimplicialSet> = (0..k).map(|_| standard_simplex(rng.gen_range(1..=max_dim))).collect();
    let refs: Vec<&SimplicialSet> = parts.iter().collect();
    let (union, _) = disjoint_union(name, &refs);
    let mut cong = Congruence::on(Arc::new(union));
    let merges = rng.gen_range(1..=3);
    for _ in 0..merges {
        let idx = cong.index().clone();
        let d = rng.gen_range(0..=idx.max_degree());
        let cells: Vec<usize> = idx
            .degree_range(d)
            .filter(|&i| !idx.simplex(i).is_degenerate())
            .collect();
        let Some(&a) = cells.choose(rng) else { continue };
        // a degenerate partner collapses `a`; a non-degenerate one glues
        let pool: Vec<usize> = idx.degree_range(d).filter(|&i| i != a).collect();
        if let Some(&b) = pool.choose(rng) {
            cong.merge(a, b);
        }
    }
    (*cong.quotient(name).set).clone()
}

/// Builtins, random quotients, and the Sd-image of every member small enough.
pub fn gen_corpus(seed: u64, params: CorpusParams) -> Corpus {
    let mut members: Vec<Member> = builtins()
        .into_iter()
        .map(|(name, set)| Member {
            set: Arc::new(set.with_name(name.clone())),
            name,
            provenance: Provenance::Builtin,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < params.random_quotients && attempts < 50 * params.random_quotients.max(1) {
        attempts += 1;
        let name = format!("rq{drawn:02}");
        let x = random_quotient(&mut rng, params.max_base_dim, &name);
        if x.num_cells() > params.max_quotient_cells {
            continue;
        }
        let x = Arc::new(x);
        let duplicate = members.iter().any(|m| {
            m.set.counts() == x.counts() && find_isomorphism(&m.set, &x).is_some()
        });
        if duplicate {
            continue;
        }
        members.push(Member {
            name,
            provenance: Provenance::RandomQuotient,
            set: x,
        });
        drawn += 1;
    }
    let bases: Vec<Member> = members.clone();
    for m in bases {
        let s = sd(&m.set);
        if s.set.num_cells() <= params.max_sd_cells {
            let name = format!("sd_{}", m.name);
            members.push(Member {
                set: Arc::new((*s.set).clone().with_name(name.clone())),
                name,
                provenance: Provenance::SdImage,
            });
        }
    }
    Corpus { seed, members }
}

impl Corpus {
    /// One `.sset` file per member plus a manifest `corpus.txt`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let mut manifest = format!("seed {}\n", self.seed);
        for m in &self.members {
            fs::write(dir.join(format!("{}.sset", m.name)), print_sset(&m.set))?;
            manifest.push_str(&format!("member {} {}\n", m.name, m.provenance));
        }
        fs::write(dir.join("corpus.txt"), manifest)
    }

    pub fn read_from(dir: &Path) -> Result<Corpus, CorpusError> {
        let manifest = fs::read_to_string(dir.join("corpus.txt"))?;
        let mut seed = 0;
        let mut members = Vec::new();
        for line in manifest.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["seed", s] => seed = s.parse().map_err(|_| CorpusError::Manifest(line.to_string()))?,
                ["member", name, prov] => {
                    let text = fs::read_to_string(dir.join(format!("{name}.sset")))?;
                    members.push(Member {
                        name: name.to_string(),
                        provenance: prov.parse().map_err(CorpusError::Manifest)?,
                        set: Arc::new(parse_sset(&text)?),
                    });
                }
                _ => return Err(CorpusError::Manifest(line.to_string())),
            }
        }
        Ok(Corpus { seed, members })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error("bad manifest line: {0}")]
    Manifest(String),
}

/// Small inputs for the oracles: builtins and random quotients with at most `max_cells`
/// cells, pairwise non-isomorphic.
pub fn tiny_inputs(seed: u64, count: usize, max_cells: usize) -> Vec<Member> {
    let mut out: Vec<Member> = builtins()
        .into_iter()
        .filter(|(_, x)| x.num_cells() <= max_cells)
        .map(|(name, set)| Member {
            set: Arc::new(set.with_name(name.clone())),
            name,
            provenance: Provenance::Builtin,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let name = format!("tiny{:02}", out.len());
        let x = random_quotient(&mut rng, 2, &name);
        if x.num_cells() > max_cells {
            continue;
        }
        let x = Arc::new(x);
        if out
            .iter()
            .any(|m| m.set.counts() == x.counts() && find_isomorphism(&m.set, &x).is_some())
        {
            continue;
        }
        out.push(Member {
            name,
            provenance: Provenance::RandomQuotient,
            set: x,
        });
    }
    out
}
