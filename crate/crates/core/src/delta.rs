//! Arithmetic in the simplex category.
//!
//! An [`Operator`] is a weakly increasing map `[m] -> [n]`. Face operators are
//! the injective ones, degeneracy operators the surjective ones. Every operator
//! factors uniquely as a degeneracy followed by a face ([`Operator::ez_factor`]).
//!
//! Composition is written in diagrammatic order: `compose(first, second)` is the
//! pointwise map `second ∘ first`. Simplices are acted on from the right, so for
//! a simplex `x` we have `(x·α)·β = x·compose(β, α)`.
//!
//! Text encodings (see [`Operator::encode`]):
//!
//! ```text
//! face n {i0,i1,...}    injective operator into [n], given by its image
//! degen m {j0,...}      surjective operator out of [m], given by {j : v(j) == v(j+1)}
//! op m n (v0 v1 ...)    anything else, given by its value sequence
//! ```

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

/// Largest rank an operator may have. Subsets of `[n]` are held in `u32` masks.
pub const MAX_RANK: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("value sequence is not weakly increasing")]
    NotMonotone,
    #[error("value {value} exceeds target rank {rank}")]
    ValueOutOfRange { value: usize, rank: usize },
    #[error("rank {0} exceeds the supported maximum")]
    RankTooLarge(usize),
    #[error("operator is not a face operator")]
    NotAFace,
    #[error("cannot parse operator: {0}")]
    Parse(String),
}

/// A monotone map `[src] -> [dst]`, stored by its full value sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator {
    dst: u8,
    values: SmallVec<[u8; 8]>,
}

impl Operator {
    pub fn new(values: &[usize], dst: usize) -> Result<Self, DeltaError> {
        if dst > MAX_RANK {
            return Err(DeltaError::RankTooLarge(dst));
        }
        if values.is_empty() {
            return Err(DeltaError::Parse("empty value sequence".into()));
        }
        if values.len() > MAX_RANK + 1 {
            return Err(DeltaError::RankTooLarge(values.len() - 1));
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(DeltaError::NotMonotone);
            }
        }
        if let Some(&v) = values.iter().find(|&&v| v > dst) {
            return Err(DeltaError::ValueOutOfRange { value: v, rank: dst });
        }
        Ok(Self::from_raw(values.iter().map(|&v| v as u8).collect(), dst))
    }

    pub(crate) fn from_raw(values: SmallVec<[u8; 8]>, dst: usize) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| (v as usize) <= dst));
        Self {
            dst: dst as u8,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw((0..=n as u8).collect(), n)
    }

    /// The face operator `δ_i : [n-1] -> [n]` that skips `i`.
    pub fn face(i: usize, n: usize) -> Result<Self, DeltaError> {
        if n == 0 || i > n {
            return Err(DeltaError::IndexOutOfRange { index: i, rank: n });
        }
        let values = (0..n).map(|j| if j < i { j as u8 } else { j as u8 + 1 }).collect();
        Ok(Self::from_raw(values, n))
    }

    /// The degeneracy operator `σ_i : [n+1] -> [n]` that repeats `i`.
    pub fn degeneracy(i: usize, n: usize) -> Result<Self, DeltaError> {
        if i > n {
            return Err(DeltaError::IndexOutOfRange { index: i, rank: n });
        }
        let values = (0..=n + 1).map(|j| if j <= i { j as u8 } else { j as u8 - 1 }).collect();
        Ok(Self::from_raw(values, n))
    }

    /// The vertex operator `ε_j : [0] -> [n]`.
    pub fn vertex(j: usize, n: usize) -> Result<Self, DeltaError> {
        if j > n {
            return Err(DeltaError::IndexOutOfRange { index: j, rank: n });
        }
        Ok(Self::from_raw(smallvec::smallvec![j as u8], n))
    }

    /// The constant operator `[m] -> [0]`.
    pub fn terminal(m: usize) -> Self {
        Self::from_raw(smallvec::smallvec![0; m + 1], 0)
    }

    /// The face operator into `[n]` whose image is the set bits of `mask`.
    pub fn from_image(n: usize, mask: u32) -> Result<Self, DeltaError> {
        if mask == 0 {
            return Err(DeltaError::Parse("empty image".into()));
        }
        if n > MAX_RANK {
            return Err(DeltaError::RankTooLarge(n));
        }
        if mask >> (n + 1) != 0 {
            return Err(DeltaError::ValueOutOfRange {
                value: 31 - mask.leading_zeros() as usize,
                rank: n,
            });
        }
        Ok(Self::face_from_mask(n, mask))
    }

    pub(crate) fn face_from_mask(n: usize, mask: u32) -> Self {
        let values = (0..=n as u8).filter(|&v| mask & (1 << v) != 0).collect();
        Self::from_raw(values, n)
    }

    /// The surjection out of `[m]` with `values(j) == values(j+1)` exactly for `j` in `repeats`.
    pub fn from_repeats(m: usize, repeats: &[usize]) -> Result<Self, DeltaError> {
        if m > MAX_RANK {
            return Err(DeltaError::RankTooLarge(m));
        }
        let mut mask = 0u32;
        for &j in repeats {
            if j >= m {
                return Err(DeltaError::IndexOutOfRange { index: j, rank: m });
            }
            mask |= 1 << j;
        }
        Ok(Self::degeneracy_from_repeat_mask(m, mask))
    }

    pub(crate) fn degeneracy_from_repeat_mask(m: usize, mask: u32) -> Self {
        let mut values = SmallVec::with_capacity(m + 1);
        let mut v = 0u8;
        values.push(0);
        for j in 0..m {
            if mask & (1 << j) == 0 {
                v += 1;
            }
            values.push(v);
        }
        Self::from_raw(values, v as usize)
    }

    pub fn src(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dst(&self) -> usize {
        self.dst as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn at(&self, j: usize) -> usize {
        self.values[j] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.src() == self.dst() && self.is_face()
    }

    pub fn is_face(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_degeneracy(&self) -> bool {
        self.values[0] == 0 && self.values[self.src()] as usize == self.dst() && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// The image as a bit mask over `[dst]`.
    pub fn image_mask(&self) -> u32 {
        self.values.iter().fold(0, |m, &v| m | (1 << v))
    }

    /// Bit `j` set iff `values(j) == values(j+1)`.
    pub fn repeat_mask(&self) -> u32 {
        let mut mask = 0;
        for (j, w) in self.values.windows(2).enumerate() {
            if w[0] == w[1] {
                mask |= 1 << j;
            }
        }
        mask
    }

    pub fn repeats(&self) -> Vec<usize> {
        mask_to_vec(self.repeat_mask())
    }

    /// `compose(self, second)`.
    pub fn then(&self, second: &Operator) -> Result<Operator, DeltaError> {
        compose(self, second)
    }

    /// `second ∘ self` without the rank check.
    #[inline]
    pub(crate) fn then_unchecked(&self, second: &Operator) -> Operator {
        debug_assert_eq!(self.dst(), second.src());
        let values = self.values.iter().map(|&v| second.values[v as usize]).collect();
        Operator::from_raw(values, second.dst())
    }

    /// The unique factorization `self = compose(degen, face)` with `degen` surjective and
    /// `face` injective. Returned as `(face, degen)`.
    pub fn ez_factor(&self) -> (Operator, Operator) {
        let mask = self.image_mask();
        let face = Operator::face_from_mask(self.dst(), mask);
        let degen = Operator::degeneracy_from_repeat_mask(self.src(), self.repeat_mask());
        (face, degen)
    }

    /// Short human-readable encoding; faces by image, degeneracies by repeats.
    pub fn encode(&self) -> String {
        if self.is_face() {
            format!("face {} {}", self.dst(), brace_set(&mask_to_vec(self.image_mask())))
        } else if self.is_degeneracy() {
            self.encode_degen()
        } else {
            let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            format!("op {} {} ({})", self.src(), self.dst(), vals.join(" "))
        }
    }

    /// The `degen m {..}` encoding. Only meaningful for surjections.
    pub fn encode_degen(&self) -> String {
        format!("degen {} {}", self.src(), brace_set(&self.repeats()))
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl FromStr for Operator {
    type Err = DeltaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DeltaError::Parse(s.to_string());
        let (kind, rest) = s.split_once(char::is_whitespace).ok_or_else(bad)?;
        let rest = rest.trim();
        match kind {
            "face" | "degen" => {
                let (rank, set) = rest.split_once(char::is_whitespace).ok_or_else(bad)?;
                let rank: usize = rank.parse().map_err(|_| bad())?;
                let set = parse_delimited(set.trim(), '{', '}', ',').ok_or_else(bad)?;
                if kind == "face" {
                    let mut mask = 0u32;
                    for w in set.windows(2) {
                        if w[0] >= w[1] {
                            return Err(bad());
                        }
                    }
                    for &i in &set {
                        if i > rank || i > MAX_RANK {
                            return Err(DeltaError::ValueOutOfRange { value: i, rank });
                        }
                        mask |= 1 << i;
                    }
                    Operator::from_image(rank, mask)
                } else {
                    for w in set.windows(2) {
                        if w[0] >= w[1] {
                            return Err(bad());
                        }
                    }
                    Operator::from_repeats(rank, &set)
                }
            }
            "op" => {
                let mut parts = rest.splitn(3, char::is_whitespace);
                let m: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let vals = parse_delimited(parts.next().ok_or_else(bad)?.trim(), '(', ')', ' ')
                    .ok_or_else(bad)?;
                if vals.len() != m + 1 {
                    return Err(DeltaError::RankMismatch {
                        expected: m + 1,
                        found: vals.len(),
                    });
                }
                Operator::new(&vals, n)
            }
            _ => Err(bad()),
        }
    }
}

fn parse_delimited(s: &str, open: char, close: char, sep: char) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(open)?.strip_suffix(close)?;
    inner
        .split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect()
}

fn brace_set(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Pointwise composite `second ∘ first`.
pub fn compose(first: &Operator, second: &Operator) -> Result<Operator, DeltaError> {
    if first.dst() != second.src() {
        return Err(DeltaError::RankMismatch {
            expected: second.src(),
            found: first.dst(),
        });
    }
    Ok(first.then_unchecked(second))
}

/// The face operator whose image is the union of the images of `mu` and `nu`.
pub fn join_faces(mu: &Operator, nu: &Operator) -> Result<Operator, DeltaError> {
    if mu.dst() != nu.dst() {
        return Err(DeltaError::RankMismatch {
            expected: mu.dst(),
            found: nu.dst(),
        });
    }
    if !mu.is_face() || !nu.is_face() {
        return Err(DeltaError::NotAFace);
    }
    Ok(Operator::face_from_mask(mu.dst(), mu.image_mask() | nu.image_mask()))
}

/// All surjections `[q] -> [k]`, ordered by repeat mask.
pub fn surjections(q: usize, k: usize) -> Vec<Operator> {
    if k > q {
        return Vec::new();
    }
    let ones = (q - k) as u32;
    (0u32..(1 << q))
        .filter(|m| m.count_ones() == ones)
        .map(|m| Operator::degeneracy_from_repeat_mask(q, m))
        .collect()
}

/// All face operators into `[n]`, ordered by image mask.
pub fn faces_into(n: usize) -> impl Iterator<Item = Operator> {
    (1u32..(1 << (n + 1))).map(move |m| Operator::face_from_mask(n, m))
}

/// All operators `[m] -> [n]`.
pub fn all_operators(m: usize, n: usize) -> Vec<Operator> {
    let mut out = Vec::new();
    let mut cur: SmallVec<[u8; 8]> = smallvec::smallvec![0; m + 1];
    loop {
        out.push(Operator::from_raw(cur.clone(), n));
        // advance to the next weakly increasing sequence
        let mut j = m as isize;
        while j >= 0 && cur[j as usize] as usize == n {
            j -= 1;
        }
        if j < 0 {
            break;
        }
        let v = cur[j as usize] + 1;
        for t in j as usize..=m {
            cur[t] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(vals: &[usize], n: usize) -> Operator {
        Operator::new(vals, n).unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(Operator::face(2, 2).unwrap(), op(&[0, 1], 2));
        let s = Operator::degeneracy(0, 1).unwrap();
        assert_eq!(s.values(), &[0, 0, 1]);
        assert_eq!((s.src(), s.dst()), (2, 1));
        assert_eq!(Operator::identity(3).values(), &[0, 1, 2, 3]);
        assert_eq!(Operator::vertex(2, 3).unwrap().values(), &[2]);
        assert!(Operator::face(3, 2).is_err());
        assert!(Operator::face(0, 0).is_err());
        assert!(Operator::degeneracy(2, 1).is_err());
        assert!(Operator::vertex(4, 3).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(Operator::new(&[1, 0], 2), Err(DeltaError::NotMonotone));
        assert!(matches!(Operator::new(&[0, 3], 2), Err(DeltaError::ValueOutOfRange { .. })));
    }

    #[test]
    fn compose_examples() {
        let d0 = Operator::face(0, 1).unwrap();
        let d2 = Operator::face(2, 2).unwrap();
        let c = compose(&d0, &d2).unwrap();
        assert_eq!(c, Operator::vertex(1, 2).unwrap());

        let a = op(&[0, 0, 2], 3);
        assert_eq!(compose(&a, &Operator::identity(3)).unwrap(), a);
        assert_eq!(compose(&Operator::identity(2), &a).unwrap(), a);

        // δ_0 : [0] -> [1] followed by σ_0 : [2] -> [1] does not compose
        let s0 = Operator::degeneracy(0, 1).unwrap();
        assert!(matches!(compose(&d0, &s0), Err(DeltaError::RankMismatch { .. })));
        // σ_0 : [1] -> [0] followed by ε_0 : [0] -> [1] does compose
        let s = Operator::degeneracy(0, 0).unwrap();
        let e0 = Operator::vertex(0, 1).unwrap();
        assert_eq!(compose(&s, &e0).unwrap(), op(&[0, 0], 1));
    }

    #[test]
    fn ez_examples() {
        let d = Operator::face(1, 3).unwrap();
        assert_eq!(d.ez_factor(), (d.clone(), Operator::identity(2)));

        let s1 = Operator::degeneracy(1, 1).unwrap();
        assert_eq!(s1.ez_factor(), (Operator::identity(1), s1.clone()));

        let a = op(&[0, 0, 2], 2);
        let (f, s) = a.ez_factor();
        assert_eq!(f.image_mask(), 0b101);
        assert_eq!(s, Operator::degeneracy(0, 1).unwrap());
    }

    #[test]
    fn join_examples() {
        let d2 = Operator::face(2, 2).unwrap();
        let d0 = Operator::face(0, 2).unwrap();
        assert_eq!(join_faces(&d2, &d0).unwrap(), Operator::identity(2));
        assert_eq!(join_faces(&d2, &d2).unwrap(), d2);
        let e0 = Operator::vertex(0, 2).unwrap();
        let e2 = Operator::vertex(2, 2).unwrap();
        assert_eq!(join_faces(&e0, &e2).unwrap().image_mask(), 0b101);
        assert!(join_faces(&e0, &Operator::vertex(0, 1).unwrap()).is_err());
    }

    #[test]
    fn encodings() {
        let cases = [
            ("face 2 {0,2}", op(&[0, 2], 2)),
            ("degen 3 {1}", op(&[0, 1, 1, 2], 2)),
            ("op 2 3 (0 0 3)", op(&[0, 0, 3], 3)),
            ("face 1 {0,1}", Operator::identity(1)),
        ];
        for (text, o) in cases {
            assert_eq!(o.encode(), text);
            assert_eq!(text.parse::<Operator>().unwrap(), o);
        }
        assert_eq!(Operator::identity(2).encode_degen(), "degen 2 {}");
        assert_eq!("degen 2 {}".parse::<Operator>().unwrap(), Operator::identity(2));
        assert!("face 2 {2,0}".parse::<Operator>().is_err());
        assert!("face 2 {3}".parse::<Operator>().is_err());
        assert!("op 1 2 (0 1 2)".parse::<Operator>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        // C(m+n+1, m+1) monotone maps [m] -> [n]
        assert_eq!(all_operators(2, 2).len(), 10);
        assert_eq!(all_operators(0, 4).len(), 5);
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(faces_into(3).count(), 15);
    }
}
