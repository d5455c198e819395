/// Union-find over the original vertices with member lists per
/// representative.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    parent: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ContractionMap {
    pub fn new(n: usize) -> ContractionMap {
        ContractionMap { parent: (0..n).collect(), members: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = v;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Merges the classes of `u` and `v`; returns `false` if already merged.
    pub fn union(&mut self, u: usize, v: usize) -> bool {
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        if self.members[a].len() < self.members[b].len() {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        let moved = std::mem::take(&mut self.members[b]);
        self.members[a].extend(moved);
        true
    }

    /// Original vertices contracted into `rep`; empty unless `rep` is a root.
    pub fn members(&self, rep: usize) -> &[usize] {
        &self.members[rep]
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.parent.len()).filter(|&v| self.parent[v] == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_partition_vertices() {
        let mut c = ContractionMap::new(6);
        assert!(c.union(0, 1));
        assert!(c.union(2, 3));
        assert!(c.union(1, 3));
        assert!(!c.union(0, 2));
        let r = c.find(3);
        assert_eq!(c.find(r), r);
        let mut all: Vec<usize> = c.representatives().flat_map(|r| c.members(r).to_vec()).collect();
        all.sort();
        assert_eq!(all, (0..6).collect::<Vec<_>>());
        let mut m = c.members(r).to_vec();
        m.sort();
        assert_eq!(m, vec![0, 1, 2, 3]);
    }
}
