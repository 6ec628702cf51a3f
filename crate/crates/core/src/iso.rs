//! Isomorphism of nets: colour refinement followed by backtracking over
//! operator assignments.
//!
//! Once the boundary is fixed and every operator is mapped, the port map is
//! forced for every port that some slot touches; the remaining ports are
//! isolated and interchangeable.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::net::{Net, OpId, PortId, TargetSlot};

/// Witness of `M ≈ N`: bijections on ports and operators commuting with the
/// labels and both slot maps, boundary included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetIso {
    pub port_map: Vec<PortId>,
    pub op_map: Vec<OpId>,
}

impl NetIso {
    pub fn identity(net: &Net) -> Self {
        Self {
            port_map: (0..net.port_count()).collect(),
            op_map: (0..net.operators().len()).collect(),
        }
    }

    /// Checks every witness condition directly.
    pub fn verify(&self, m: &Net, n: &Net) -> bool {
        if m.dom() != n.dom()
            || m.cod() != n.cod()
            || self.port_map.len() != m.port_count()
            || self.op_map.len() != m.operators().len()
            || m.port_count() != n.port_count()
            || m.operators().len() != n.operators().len()
        {
            return false;
        }
        if !is_bijection(&self.port_map, n.port_count())
            || !is_bijection(&self.op_map, n.operators().len())
        {
            return false;
        }
        let pm = |p: &PortId| self.port_map[*p];
        let ops_ok = m.operators().iter().enumerate().all(|(x, o)| {
            let image = n.operator(self.op_map[x]);
            image.label == o.label
                && image.inputs == o.inputs.iter().map(pm).collect::<Vec<_>>()
                && image.outputs == o.outputs.iter().map(pm).collect::<Vec<_>>()
        });
        ops_ok
            && n.input_ports() == m.input_ports().iter().map(pm).collect::<Vec<_>>()
            && n.output_ports() == m.output_ports().iter().map(pm).collect::<Vec<_>>()
    }

    pub fn inverse(&self) -> NetIso {
        NetIso {
            port_map: invert(&self.port_map),
            op_map: invert(&self.op_map),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &NetIso) -> NetIso {
        NetIso {
            port_map: self.port_map.iter().map(|&p| other.port_map[p]).collect(),
            op_map: self.op_map.iter().map(|&x| other.op_map[x]).collect(),
        }
    }
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    if map.len() != size {
        return false;
    }
    let mut seen = vec![false; size];
    for &i in map {
        if i >= size || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Searches for an isomorphism `m ≈ n`. Deterministic for fixed inputs.
pub fn find_iso(m: &Net, n: &Net) -> Option<NetIso> {
    if m.dom() != n.dom()
        || m.cod() != n.cod()
        || m.port_count() != n.port_count()
        || m.operators().len() != n.operators().len()
    {
        return None;
    }
    let colours = Colouring::refine(m, n)?;
    let mut search = Search::new(m, n, &colours);
    if !search.seed_boundary() {
        return None;
    }
    let order = search.op_order();
    if !search.assign_ops(&order, 0) {
        return None;
    }
    let iso = search.finish()?;
    debug_assert!(iso.verify(m, n));
    Some(iso)
}

pub fn is_isomorphic(m: &Net, n: &Net) -> bool {
    find_iso(m, n).is_some()
}

/// Per-vertex stable colours, computed jointly over both nets so colour ids
/// are comparable.
struct Colouring {
    ops: [Vec<usize>; 2],
    ports: [Vec<usize>; 2],
}

struct Incidence {
    driver: Vec<Option<(OpId, usize)>>,
    readers: Vec<Vec<(OpId, usize)>>,
    boundary_in: Vec<Option<usize>>,
    boundary_out: Vec<Vec<usize>>,
}

impl Incidence {
    fn of(net: &Net) -> Self {
        let p = net.port_count();
        let mut inc = Incidence {
            driver: vec![None; p],
            readers: vec![Vec::new(); p],
            boundary_in: vec![None; p],
            boundary_out: vec![Vec::new(); p],
        };
        for (x, o) in net.operators().iter().enumerate() {
            for (i, &q) in o.inputs.iter().enumerate() {
                inc.readers[q].push((x, i));
            }
            for (j, &q) in o.outputs.iter().enumerate() {
                inc.driver[q] = Some((x, j));
            }
        }
        for (k, &q) in net.input_ports().iter().enumerate() {
            inc.boundary_in[q] = Some(k);
        }
        for (k, &q) in net.output_ports().iter().enumerate() {
            inc.boundary_out[q].push(k);
        }
        inc
    }
}

impl Colouring {
    /// Returns `None` when the colour histograms of the two nets differ.
    fn refine(m: &Net, n: &Net) -> Option<Colouring> {
        let nets = [m, n];
        let inc = [Incidence::of(m), Incidence::of(n)];
        let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
        for net in nets {
            for o in net.operators() {
                let next = labels.len();
                labels.entry(o.label.as_str()).or_insert(next);
            }
        }
        let mut ops: [Vec<usize>; 2] = [0, 1].map(|s| {
            nets[s]
                .operators()
                .iter()
                .map(|o| labels[o.label.as_str()])
                .collect()
        });
        let mut ports: [Vec<usize>; 2] = [vec![0; m.port_count()], vec![0; n.port_count()]];
        let mut classes = 0;
        loop {
            let mut keys: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut op_keys: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
            let mut port_keys: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
            for s in 0..2 {
                for (x, o) in nets[s].operators().iter().enumerate() {
                    let mut key = vec![0, ops[s][x], o.inputs.len(), o.outputs.len()];
                    key.extend(o.inputs.iter().map(|&p| ports[s][p]));
                    key.extend(o.outputs.iter().map(|&p| ports[s][p]));
                    op_keys[s].push(key);
                }
                for p in 0..nets[s].port_count() {
                    let mut key = vec![1, ports[s][p]];
                    match inc[s].boundary_in[p] {
                        Some(k) => key.extend([1, k]),
                        None => key.extend([0, 0]),
                    }
                    match inc[s].driver[p] {
                        Some((x, j)) => key.extend([1, ops[s][x], j]),
                        None => key.extend([0, 0, 0]),
                    }
                    key.push(inc[s].boundary_out[p].len());
                    key.extend(inc[s].boundary_out[p].iter().copied());
                    let mut readers: Vec<(usize, usize)> = inc[s].readers[p]
                        .iter()
                        .map(|&(x, i)| (ops[s][x], i))
                        .collect();
                    readers.sort_unstable();
                    key.push(readers.len());
                    key.extend(readers.into_iter().flat_map(|(c, i)| [c, i]));
                    port_keys[s].push(key);
                }
            }
            for key in op_keys.iter().chain(port_keys.iter()).flatten() {
                keys.entry(key.clone()).or_insert(0);
            }
            for (i, v) in keys.values_mut().enumerate() {
                *v = i;
            }
            for s in 0..2 {
                ops[s] = op_keys[s].iter().map(|k| keys[k]).collect();
                ports[s] = port_keys[s].iter().map(|k| keys[k]).collect();
            }
            let mut hist: [BTreeMap<usize, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
            for s in 0..2 {
                for &c in ops[s].iter().chain(ports[s].iter()) {
                    *hist[s].entry(c).or_insert(0) += 1;
                }
            }
            if hist[0] != hist[1] {
                return None;
            }
            if keys.len() == classes {
                break;
            }
            classes = keys.len();
        }
        Some(Colouring { ops, ports })
    }
}

struct Search<'a> {
    m: &'a Net,
    n: &'a Net,
    colours: &'a Colouring,
    port_fwd: Vec<Option<PortId>>,
    port_bwd: Vec<Option<PortId>>,
    op_fwd: Vec<Option<OpId>>,
    op_used: Vec<bool>,
    trail: Vec<PortId>,
    n_drivers: Vec<Option<TargetSlot>>,
}

impl<'a> Search<'a> {
    fn new(m: &'a Net, n: &'a Net, colours: &'a Colouring) -> Self {
        Search {
            m,
            n,
            colours,
            port_fwd: vec![None; m.port_count()],
            port_bwd: vec![None; n.port_count()],
            op_fwd: vec![None; m.operators().len()],
            op_used: vec![false; n.operators().len()],
            trail: Vec::new(),
            n_drivers: n.drivers(),
        }
    }

    fn bind_port(&mut self, p: PortId, q: PortId) -> bool {
        match (self.port_fwd[p], self.port_bwd[q]) {
            (Some(existing), _) => existing == q,
            (None, Some(_)) => false,
            (None, None) => {
                if self.colours.ports[0][p] != self.colours.ports[1][q] {
                    return false;
                }
                self.port_fwd[p] = Some(q);
                self.port_bwd[q] = Some(p);
                self.trail.push(p);
                true
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail underflow");
            let q = self.port_fwd[p].take().expect("trail entry unbound");
            self.port_bwd[q] = None;
        }
    }

    fn seed_boundary(&mut self) -> bool {
        let pairs: Vec<(PortId, PortId)> = self
            .m
            .input_ports()
            .iter()
            .zip(self.n.input_ports())
            .chain(self.m.output_ports().iter().zip(self.n.output_ports()))
            .map(|(&p, &q)| (p, q))
            .collect();
        pairs.into_iter().all(|(p, q)| self.bind_port(p, q))
    }

    /// Operators of `m` in breadth-first order from the boundary, so each one
    /// tends to touch an already-bound port; disconnected parts are appended
    /// smallest-colour-class first.
    fn op_order(&self) -> Vec<OpId> {
        let m = self.m;
        let mut port_ops: Vec<Vec<OpId>> = vec![Vec::new(); m.port_count()];
        for (x, o) in m.operators().iter().enumerate() {
            for &p in o.inputs.iter().chain(o.outputs.iter()) {
                port_ops[p].push(x);
            }
        }
        let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &self.colours.ops[0] {
            *class_size.entry(c).or_insert(0) += 1;
        }
        let mut remaining: Vec<OpId> = (0..m.operators().len()).collect();
        remaining.sort_by_key(|&x| (class_size[&self.colours.ops[0][x]], x));
        let mut seen_op = vec![false; m.operators().len()];
        let mut seen_port = vec![false; m.port_count()];
        let mut order = Vec::with_capacity(remaining.len());
        let mut queue: VecDeque<PortId> = m
            .input_ports()
            .iter()
            .chain(m.output_ports())
            .copied()
            .collect();
        for &p in &queue {
            seen_port[p] = true;
        }
        let mut next_seed = 0;
        loop {
            while let Some(p) = queue.pop_front() {
                for &x in &port_ops[p] {
                    if seen_op[x] {
                        continue;
                    }
                    seen_op[x] = true;
                    order.push(x);
                    let o = m.operator(x);
                    for &r in o.inputs.iter().chain(o.outputs.iter()) {
                        if !seen_port[r] {
                            seen_port[r] = true;
                            queue.push_back(r);
                        }
                    }
                }
            }
            while next_seed < remaining.len() && seen_op[remaining[next_seed]] {
                next_seed += 1;
            }
            let Some(&x) = remaining.get(next_seed) else {
                break;
            };
            seen_op[x] = true;
            order.push(x);
            let o = m.operator(x);
            for &r in o.inputs.iter().chain(o.outputs.iter()) {
                if !seen_port[r] {
                    seen_port[r] = true;
                    queue.push_back(r);
                }
            }
        }
        order
    }

    fn candidates(&self, x: OpId) -> Vec<OpId> {
        let colour = self.colours.ops[0][x];
        let o = self.m.operator(x);
        // An already-bound port pins the candidate down to its driver/readers.
        let pinned = o
            .outputs
            .iter()
            .enumerate()
            .find_map(|(j, &p)| self.port_fwd[p].map(|q| (j, q)));
        if let Some((j, q)) = pinned {
            return self
                .n_drivers
                .get(q)
                .copied()
                .flatten()
                .and_then(|slot| match slot {
                    TargetSlot::Operator { op, index } if index == j => Some(op),
                    _ => None,
                })
                .filter(|&y| !self.op_used[y] && self.colours.ops[1][y] == colour)
                .into_iter()
                .collect();
        }
        (0..self.n.operators().len())
            .filter(|&y| !self.op_used[y] && self.colours.ops[1][y] == colour)
            .collect()
    }

    fn assign_ops(&mut self, order: &[OpId], depth: usize) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        let ox = self.m.operator(x);
        for y in self.candidates(x) {
            let oy = self.n.operator(y);
            if ox.label != oy.label || ox.arity() != oy.arity() {
                continue;
            }
            let mark = self.trail.len();
            let ok = ox
                .inputs
                .iter()
                .zip(&oy.inputs)
                .chain(ox.outputs.iter().zip(&oy.outputs))
                .all(|(&p, &q)| self.bind_port(p, q));
            if ok {
                self.op_fwd[x] = Some(y);
                self.op_used[y] = true;
                if self.assign_ops(order, depth + 1) {
                    return true;
                }
                self.op_fwd[x] = None;
                self.op_used[y] = false;
            }
            self.undo_to(mark);
        }
        false
    }

    fn finish(mut self) -> Option<NetIso> {
        let free_m: Vec<PortId> = (0..self.m.port_count())
            .filter(|&p| self.port_fwd[p].is_none())
            .collect();
        let mut free_n: Vec<PortId> = (0..self.n.port_count())
            .filter(|&q| self.port_bwd[q].is_none())
            .collect();
        if free_m.len() != free_n.len() {
            return None;
        }
        for p in free_m {
            let c = self.colours.ports[0][p];
            let pos = free_n
                .iter()
                .position(|&q| self.colours.ports[1][q] == c)?;
            let q = free_n.remove(pos);
            self.port_fwd[p] = Some(q);
        }
        Some(NetIso {
            port_map: self.port_fwd.into_iter().collect::<Option<Vec<_>>>()?,
            op_map: self.op_fwd.into_iter().collect::<Option<Vec<_>>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{self, compose, duplication, generator, identity, symmetry, tensor, Operator, Signature};

    fn sig() -> Signature {
        Signature::new()
            .with("alpha", 2, 1)
            .with("beta", 2, 2)
            .with("iota", 1, 1)
    }

    fn paper_example() -> Net {
        Net::from_parts(
            5,
            vec![
                Operator::new("alpha", vec![0, 4], vec![2]),
                Operator::new("beta", vec![2, 1], vec![3, 4]),
            ],
            vec![0, 1],
            vec![3, 4],
        )
    }

    #[test]
    fn reflexive_gives_identity_witness() {
        let n = paper_example();
        let iso = find_iso(&n, &n).unwrap();
        assert_eq!(iso, NetIso::identity(&n));
    }

    #[test]
    fn identity_is_not_the_swap() {
        assert!(find_iso(&identity(2), &symmetry(1, 1)).is_none());
    }

    #[test]
    fn port_renaming_is_recovered() {
        let n = paper_example();
        let perm = vec![3, 0, 4, 1, 2];
        let renamed = n.renumbered(&perm, &[1, 0]);
        let iso = find_iso(&n, &renamed).unwrap();
        assert_eq!(iso.port_map, perm);
        assert_eq!(iso.op_map, vec![1, 0]);
        assert!(iso.verify(&n, &renamed));
        assert!(iso.inverse().verify(&renamed, &n));
    }

    #[test]
    fn distinguishes_fanout_from_parallel_copies() {
        let s = sig();
        let iota = generator(&s, "iota").unwrap();
        let shared = compose(&iota, &duplication(1)).unwrap();
        let copied = compose(&duplication(1), &tensor(&iota, &iota)).unwrap();
        assert!(find_iso(&shared, &copied).is_none());
    }

    #[test]
    fn isolated_ports_are_interchangeable() {
        let loops = tensor(
            &net::trace(&identity(1), 1).unwrap(),
            &net::trace(&identity(1), 1).unwrap(),
        );
        let iso = find_iso(&loops, &loops.renumbered(&[1, 0], &[])).unwrap();
        assert_eq!(iso.port_map.len(), 2);
    }

    #[test]
    fn symmetric_operator_clusters_resolve() {
        let s = sig();
        let iota = generator(&s, "iota").unwrap();
        let closed = net::trace(&compose(&iota, &duplication(1)).unwrap(), 1).unwrap();
        let many = (0..6).fold(identity(0), |acc, _| tensor(&acc, &closed));
        let ports: Vec<usize> = (0..many.port_count()).rev().collect();
        let ops: Vec<usize> = (0..6).rev().collect();
        let shuffled = many.renumbered(&ports, &ops);
        assert!(find_iso(&many, &shuffled).unwrap().verify(&many, &shuffled));
    }
}
