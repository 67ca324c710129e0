//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy
//! with coincidence processing).

const NONE: usize = usize::MAX;

/// Relators are words over columns: generator `g` is column `2g`, its
/// inverse `2g + 1`.
struct CosetTable {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    columns: usize,
    max_cosets: usize,
}

struct CapReached;

impl CosetTable {
    fn new(generators: usize, max_cosets: usize) -> Self {
        CosetTable {
            table: vec![vec![NONE; 2 * generators]],
            parent: vec![0],
            columns: 2 * generators,
            max_cosets,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CapReached> {
        if self.table.len() >= self.max_cosets {
            return Err(CapReached);
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.columns]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (keep, drop) = (k.min(l), k.max(l));
        self.parent[drop] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.columns {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), CapReached> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, word.len() as isize - 1);
        loop {
            while i <= j && self.table[f][word[i as usize]] != NONE {
                f = self.table[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][word[j as usize] ^ 1] != NONE {
                b = self.table[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

/// Order of the group `⟨generators | relators⟩`, or `None` when more than
/// `max_cosets` cosets would be defined.
pub fn enumerate_cosets(
    generators: usize,
    relators: &[Vec<usize>],
    max_cosets: usize,
) -> Option<usize> {
    let mut t = CosetTable::new(generators, max_cosets.max(1));
    let mut c = 0;
    while c < t.table.len() {
        if t.live(c) {
            for r in relators {
                if t.scan_and_fill(c, r).is_err() {
                    return None;
                }
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..t.columns {
                    if t.table[c][x] == NONE && t.define(c, x).is_err() {
                        return None;
                    }
                }
            }
        }
        c += 1;
    }
    Some((0..t.table.len()).filter(|&c| t.live(c)).count())
}
