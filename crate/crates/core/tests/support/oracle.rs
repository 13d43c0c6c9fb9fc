//! Independent reference implementations used to cross-check the library.

use std::collections::{BTreeMap, BTreeSet};

use coxorb::{CoxeterMatrix, LabeledComplex};
use rand::seq::SliceRandom;
use rand::Rng;

/// Coset enumeration (HLT with coincidence handling) over the trivial
/// subgroup of a group generated by involutions. Returns the group order, or
/// `None` if more than `limit` cosets are ever alive.
pub fn todd_coxeter(gens: usize, relators: &[Vec<usize>], limit: usize) -> Option<usize> {
    let mut tc = Enumeration {
        table: vec![vec![None; gens]],
        parent: vec![0],
        queue: Vec::new(),
        live: 1,
    };
    let mut a = 0;
    while a < tc.table.len() {
        if tc.parent[a] == a {
            for r in relators {
                if tc.parent[a] != a {
                    break;
                }
                tc.scan_and_fill(a, r);
            }
            if tc.parent[a] == a {
                for x in 0..gens {
                    if tc.table[a][x].is_none() {
                        tc.define(a, x);
                    }
                }
            }
        }
        if tc.live > limit {
            return None;
        }
        a += 1;
    }
    Some((0..tc.table.len()).filter(|&c| tc.parent[c] == c).count())
}

struct Enumeration {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    live: usize,
}

impl Enumeration {
    fn define(&mut self, c: usize, x: usize) {
        let d = self.table.len();
        self.table.push(vec![None; self.table[0].len()]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = Some(d);
        self.table[d][x] = Some(c);
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.table[g].len() {
                let Some(d) = self.table[g][x] else { continue };
                self.table[d][x] = None;
                let (mu, nu) = (self.rep(g), self.rep(d));
                if let Some(t) = self.table[mu][x] {
                    self.merge(nu, t);
                } else if let Some(t) = self.table[nu][x] {
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = Some(nu);
                    self.table[nu][x] = Some(mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, r: &[usize]) {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, r.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][r[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.table[b][r[j as usize]] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            } else if j == i as isize {
                self.table[f][r[i]] = Some(b);
                self.table[b][r[i]] = Some(f);
                return;
            } else {
                self.define(f, r[i]);
            }
        }
    }
}

/// Order of the Coxeter group on `subset` by coset enumeration.
pub fn coxeter_order_tc(m: &CoxeterMatrix, subset: &[usize], limit: usize) -> Option<usize> {
    let k = subset.len();
    let mut relators = Vec::new();
    for i in 0..k {
        relators.push(vec![i, i]);
        for j in i + 1..k {
            if let Some(mij) = m.get(subset[i], subset[j]) {
                relators.push(
                    (0..2 * mij as usize)
                        .map(|n| if n % 2 == 0 { i } else { j })
                        .collect(),
                );
            }
        }
    }
    todd_coxeter(k, &relators, limit)
}

/// Every chordless 4-cycle with all labels 2, by exhaustive search over
/// vertex 4-sets.
pub fn brute_force_right_angled_4cycles(c: &LabeledComplex) -> BTreeSet<BTreeSet<usize>> {
    let n = c.vertex_count();
    let two = |a: usize, b: usize| c.label(a, b) == Some(2);
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                for e in d + 1..n {
                    for [p, q, r, s] in [[a, b, d, e], [a, b, e, d], [a, d, b, e]] {
                        if two(p, q)
                            && two(q, r)
                            && two(r, s)
                            && two(s, p)
                            && !c.is_edge(p, r)
                            && !c.is_edge(q, s)
                        {
                            out.insert(BTreeSet::from([a, b, d, e]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every 3-clique with `1/p + 1/q + 1/r = 1`, i.e. `pq + qr + rp = pqr`.
pub fn brute_force_euclidean_triangles(c: &LabeledComplex) -> BTreeSet<[usize; 3]> {
    let n = c.vertex_count();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                if let (Some(p), Some(q), Some(r)) = (c.label(a, b), c.label(b, d), c.label(a, d)) {
                    let (p, q, r) = (p as u64, q as u64, r as u64);
                    if p * q + q * r + r * p == p * q * r {
                        out.insert([a, b, d]);
                    }
                }
            }
        }
    }
    out
}

/// Length of the element of the infinite dihedral group given by a word in
/// `{0, 1}`: free reduction of `ss` pairs.
pub fn infinite_dihedral_length(w: &[usize]) -> usize {
    let mut stack: Vec<usize> = Vec::new();
    for &s in w {
        if stack.last() == Some(&s) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    stack.len()
}

/// A random flag triangulation of `S²` with all labels 2 and at most
/// `max_vertices` vertices, grown from the octahedron or the icosahedron by
/// flag-preserving edge subdivisions and flips.
pub fn random_flag_sphere<R: Rng>(rng: &mut R, max_vertices: usize) -> LabeledComplex {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let add = |adj: &mut BTreeMap<usize, BTreeSet<usize>>, a: usize, b: usize| {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    };
    if rng.gen_bool(0.5) || max_vertices < 12 {
        for p in [0, 1] {
            for e in 2..6 {
                add(&mut adj, p, e);
            }
        }
        for e in 2..6 {
            add(&mut adj, e, if e == 5 { 2 } else { e + 1 });
        }
    } else {
        for i in 0..5 {
            let (u, un, l, ln) = (1 + i, 1 + (i + 1) % 5, 6 + i, 6 + (i + 1) % 5);
            for (a, b) in [(0, u), (u, un), (u, l), (un, l), (l, ln), (l, 11)] {
                add(&mut adj, a, b);
            }
        }
    }
    let target = rng.gen_range(adj.len()..=max_vertices);
    let steps = rng.gen_range(0..3 * max_vertices);
    for _ in 0..steps {
        let edges: Vec<(usize, usize)> = adj
            .iter()
            .flat_map(|(&a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect();
        let &(u, v) = edges.choose(rng).unwrap();
        let opp: Vec<usize> = adj[&u].intersection(&adj[&v]).copied().collect();
        assert_eq!(opp.len(), 2, "flag spheres have two triangles per edge");
        let (a, b) = (opp[0], opp[1]);
        if adj[&a].contains(&b) {
            continue;
        }
        let grow = adj.len() < target && rng.gen_bool(0.5);
        if grow {
            let w = adj.len();
            adj.get_mut(&u).unwrap().remove(&v);
            adj.get_mut(&v).unwrap().remove(&u);
            for x in [u, v, a, b] {
                add(&mut adj, w, x);
            }
        } else {
            let common = adj[&a].intersection(&adj[&b]).count();
            if adj[&u].len() >= 5 && adj[&v].len() >= 5 && common == 2 {
                adj.get_mut(&u).unwrap().remove(&v);
                adj.get_mut(&v).unwrap().remove(&u);
                add(&mut adj, a, b);
            }
        }
    }
    let names: Vec<String> = adj.keys().map(|v| format!("v{v}")).collect();
    let edges: Vec<(String, String, u32)> = adj
        .iter()
        .flat_map(|(&a, ns)| {
            ns.iter()
                .filter(move |&&b| b > a)
                .map(move |&b| (format!("v{a}"), format!("v{b}"), 2))
        })
        .collect();
    LabeledComplex::new("random-flag", &names, &edges).unwrap()
}

/// Random flag-preserving flips of an all-2 flag sphere that never increase
/// the number of chordless 4-cycles; stops once none are left.
pub fn flip_away_4cycles<R: Rng>(
    rng: &mut R,
    c: &LabeledComplex,
    attempts: usize,
) -> LabeledComplex {
    let n = c.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| c.neighbors(v).clone()).collect();
    let build = |adj: &[BTreeSet<usize>]| {
        let edges: Vec<(String, String, u32)> = (0..n)
            .flat_map(|a| adj[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .map(|(a, b)| (c.vertex_name(a).to_owned(), c.vertex_name(b).to_owned(), 2))
            .collect();
        LabeledComplex::new(c.name(), c.vertices(), &edges).unwrap()
    };
    let mut best = brute_force_right_angled_4cycles(c).len();
    for _ in 0..attempts {
        if best == 0 {
            break;
        }
        let u = rng.gen_range(0..n);
        let Some(&&v) = adj[u].iter().collect::<Vec<_>>().choose(rng) else {
            continue;
        };
        let opp: Vec<usize> = adj[u].intersection(&adj[v]).copied().collect();
        let (a, b) = (opp[0], opp[1]);
        let common = adj[a].intersection(&adj[b]).count();
        if adj[a].contains(&b) || adj[u].len() < 5 || adj[v].len() < 5 || common != 2 {
            continue;
        }
        let mut next = adj.clone();
        next[u].remove(&v);
        next[v].remove(&u);
        next[a].insert(b);
        next[b].insert(a);
        let count = brute_force_right_angled_4cycles(&build(&next)).len();
        if count <= best {
            adj = next;
            best = count;
        }
    }
    build(&adj)
}
