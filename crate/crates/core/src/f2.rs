//! Dense bit vectors and incremental row reduction over the two-element field.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.flip(k);
        v
    }

    pub fn get(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn flip(&mut self, k: usize) {
        debug_assert!(k < self.len);
        self.words[k / 64] ^= 1 << (k % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&k| self.get(k))
    }
}

/// Row-reduced basis of a subspace, keyed by pivot (lowest set bit).
/// Each stored row may carry a companion vector that is transformed along
/// with it, which is how kernels are extracted.
pub struct Echelon {
    rows: Vec<Option<(BitVec, Option<BitVec>)>>,
    rank: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            rows: vec![None; dim],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` (and its companion) against the basis. Returns the
    /// residue; zero means `v` lies in the span.
    fn reduce(&self, v: &mut BitVec, mut tag: Option<&mut BitVec>) {
        while let Some(p) = v.lowest_one() {
            match &self.rows[p] {
                Some((row, row_tag)) => {
                    v.xor_assign(row);
                    if let (Some(t), Some(rt)) = (tag.as_deref_mut(), row_tag) {
                        t.xor_assign(rt);
                    }
                }
                None => return,
            }
        }
    }

    #[cfg(test)]
    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v, None);
        v.is_zero()
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: BitVec) -> bool {
        self.insert_tagged(v, None).is_none()
    }

    /// Inserts `v` with a companion. If `v` reduces to zero, the reduced
    /// companion is returned instead (a relation among the inserted
    /// vectors).
    pub fn insert_tagged(
        &mut self,
        mut v: BitVec,
        mut tag: Option<BitVec>,
    ) -> Option<Option<BitVec>> {
        self.reduce(&mut v, tag.as_mut());
        match v.lowest_one() {
            Some(p) => {
                self.rows[p] = Some((v, tag));
                self.rank += 1;
                None
            }
            None => Some(tag),
        }
    }
}

/// Basis of the kernel of the linear map whose `k`-th column is
/// `columns[k]` (each of length `target_dim`).
pub fn kernel(columns: &[BitVec], target_dim: usize) -> Vec<BitVec> {
    let mut ech = Echelon::new(target_dim);
    let mut out = Vec::new();
    for (k, col) in columns.iter().enumerate() {
        if let Some(Some(rel)) =
            ech.insert_tagged(col.clone(), Some(BitVec::unit(columns.len(), k)))
        {
            out.push(rel);
        }
    }
    out
}
