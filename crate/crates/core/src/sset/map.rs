use std::fmt;
use std::sync::Arc;

use super::{CellId, Simplex, SimplicialSet, SsetError};

/// A simplicial map, given by the image of every cell of the source.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<Simplex>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialMap({} -> {}, {:?})",
            self.source.name(),
            self.target.name(),
            self.images
        )
    }
}

impl SimplicialMap {
    /// Check degrees and face compatibility, then wrap.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Simplex>,
    ) -> Result<Self, SsetError> {
        if images.len() != source.num_cells() {
            return Err(SsetError::Incompatible(format!(
                "{} images for {} cells",
                images.len(),
                source.num_cells()
            )));
        }
        for (c, img) in images.iter().enumerate() {
            if img.cell >= target.num_cells() {
                return Err(SsetError::DanglingCell(img.cell));
            }
            if img.degree() != source.cell_dim(c) || img.degen.dst() != target.cell_dim(img.cell) {
                return Err(SsetError::DegreeMismatch {
                    expected: source.cell_dim(c),
                    found: img.degree(),
                });
            }
        }
        let map = Self {
            source,
            target,
            images,
        };
        for c in 0..map.source.num_cells() {
            let d = map.source.cell_dim(c);
            if d == 0 {
                continue;
            }
            for i in 0..=d {
                let lhs = map.target.face(&map.images[c], i)?;
                let rhs = map.apply(&map.source.faces(c)[i]);
                if lhs != rhs {
                    return Err(SsetError::NotSimplicial { cell: c, index: i });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = (0..x.num_cells()).map(|c| x.cell_simplex(c)).collect();
        Self {
            source: x.clone(),
            target: x,
            images,
        }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn images(&self) -> &[Simplex] {
        &self.images
    }

    pub fn image(&self, c: CellId) -> &Simplex {
        &self.images[c]
    }

    /// Image of an arbitrary source simplex.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let img = &self.images[s.cell];
        if s.degen.is_identity() {
            img.clone()
        } else {
            self.target.eval_unchecked(img, &s.degen)
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &SimplicialMap) -> Result<SimplicialMap, SsetError> {
        if !same_set(&self.target, &then.source) {
            return Err(SsetError::Incompatible(format!(
                "target {} is not source {}",
                self.target.name(),
                then.source.name()
            )));
        }
        let images = self.images.iter().map(|s| then.apply(s)).collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: then.target.clone(),
            images,
        })
    }

    /// Same underlying sets (by presentation) and same cell images.
    pub fn same_as(&self, other: &SimplicialMap) -> bool {
        same_set(&self.source, &other.source)
            && same_set(&self.target, &other.target)
            && self.images == other.images
    }

    /// Restate this map between identical presentations held in other allocations.
    pub fn rebased(
        &self,
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
    ) -> Result<SimplicialMap, SsetError> {
        if !same_set(&self.source, &source) || !same_set(&self.target, &target) {
            return Err(SsetError::Incompatible("rebase onto a different presentation".into()));
        }
        Ok(SimplicialMap {
            source,
            target,
            images: self.images.clone(),
        })
    }

    /// The unique `g` with `g ∘ eta = h`, for a degreewise surjective `eta`.
    ///
    /// Each cell of the target of `eta` takes the value of `h` on some preimage cell; the
    /// result is then checked against `h` on every cell, so an `eta` whose kernel is not
    /// contained in that of `h` is reported rather than silently resolved.
    pub fn factor_through(eta: &SimplicialMap, h: &SimplicialMap) -> Result<SimplicialMap, SsetError> {
        if !same_set(eta.source(), h.source()) {
            return Err(SsetError::Incompatible("maps have different sources".into()));
        }
        let mut images: Vec<Option<Simplex>> = vec![None; eta.target().num_cells()];
        for (c, s) in eta.images().iter().enumerate() {
            if !s.is_degenerate() && images[s.cell].is_none() {
                images[s.cell] = Some(h.image(c).clone());
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(c, s)| s.ok_or_else(|| SsetError::Incompatible(format!("cell {c} has no preimage"))))
            .collect::<Result<Vec<_>, _>>()?;
        let g = SimplicialMap::new(eta.target().clone(), h.target().clone(), images)?;
        let composite = eta.then(&g)?;
        if composite.images() != h.images() {
            return Err(SsetError::Incompatible("map does not factor: choice of preimage matters".into()));
        }
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Simplex>,
    ) -> Self {
        Self {
            source,
            target,
            images,
        }
    }
}

pub(crate) fn same_set(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
