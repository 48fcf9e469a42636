use crate::graph::Graph;

/// Partition of the rows of A* refined one landmark column at a time.
///
/// Adding column `v` splits every class into the neighbors of `v`, `v`
/// itself and the rest, touching only the classes that meet `N(v) ∪ {v}`.
#[derive(Debug, Clone)]
pub(crate) struct AStarPartition<'g> {
    g: &'g Graph,
    class_of: Vec<u32>,
    size: Vec<u32>,
    hits: Vec<u32>,
    remap: Vec<u32>,
    touched: Vec<u32>,
}

impl<'g> AStarPartition<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let n = g.n();
        AStarPartition {
            g,
            class_of: vec![0; n],
            size: if n == 0 { Vec::new() } else { vec![n as u32] },
            hits: if n == 0 { Vec::new() } else { vec![0] },
            remap: if n == 0 { Vec::new() } else { vec![u32::MAX] },
            touched: Vec::new(),
        }
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.size.len() >= self.g.n()
    }

    pub(crate) fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    pub(crate) fn sizes(&self) -> &[u32] {
        &self.size
    }

    fn fresh_class(&mut self) -> u32 {
        self.size.push(0);
        self.hits.push(0);
        self.remap.push(u32::MAX);
        (self.size.len() - 1) as u32
    }

    fn move_to(&mut self, u: usize, to: u32) {
        let from = self.class_of[u] as usize;
        self.size[from] -= 1;
        self.size[to as usize] += 1;
        self.class_of[u] = to;
    }

    pub(crate) fn add_column(&mut self, v: usize) {
        let g = self.g;
        for &u in g.neighbors(v) {
            let c = self.class_of[u as usize];
            if self.hits[c as usize] == 0 {
                self.touched.push(c);
            }
            self.hits[c as usize] += 1;
        }
        let mut touched = std::mem::take(&mut self.touched);
        for &c in &touched {
            if self.hits[c as usize] < self.size[c as usize] {
                let fresh = self.fresh_class();
                self.remap[c as usize] = fresh;
            }
        }
        for &u in g.neighbors(v) {
            let c = self.class_of[u as usize] as usize;
            let to = self.remap[c];
            if to != u32::MAX {
                self.move_to(u as usize, to);
            }
        }
        for &c in &touched {
            self.hits[c as usize] = 0;
            self.remap[c as usize] = u32::MAX;
        }
        touched.clear();
        self.touched = touched;
        let own = self.class_of[v] as usize;
        if self.size[own] > 1 {
            let fresh = self.fresh_class();
            self.move_to(v, fresh);
        }
    }
}
