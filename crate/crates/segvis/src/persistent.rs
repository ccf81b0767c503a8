//! Partially persistent ordered map.
//!
//! A left-leaning red-black tree stored in an arena. Updates copy the search
//! path and return a new root; every earlier root stays valid and unchanged.
//! Nodes created during the current update are mutated in place, so each
//! update allocates `O(log n)` nodes.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Handle to one version. `Version::EMPTY` is the empty map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Version(pub u32);

impl Version {
    pub const EMPTY: Version = Version(NIL);

    pub fn is_empty(self) -> bool {
        self.0 == NIL
    }
}

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Node<K, V> {
    key: K,
    val: V,
    left: u32,
    right: u32,
    red: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PersistentMap<K, V> {
    nodes: Vec<Node<K, V>>,
    #[serde(skip)]
    fresh_from: usize,
}

impl<K, V> Default for PersistentMap<K, V> {
    fn default() -> Self {
        PersistentMap {
            nodes: Vec::new(),
            fresh_from: 0,
        }
    }
}

type Cmp<'a, K> = &'a dyn Fn(&K, &K) -> Ordering;

impl<K: Clone, V: Clone> PersistentMap<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total arena size across all versions.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn is_red(&self, h: u32) -> bool {
        h != NIL && self.nodes[h as usize].red
    }

    fn left(&self, h: u32) -> u32 {
        self.nodes[h as usize].left
    }

    fn right(&self, h: u32) -> u32 {
        self.nodes[h as usize].right
    }

    fn n(&mut self, h: u32) -> &mut Node<K, V> {
        &mut self.nodes[h as usize]
    }

    /// Returns a node id that may be mutated without affecting older versions.
    fn own(&mut self, h: u32) -> u32 {
        if (h as usize) >= self.fresh_from {
            return h;
        }
        let copy = self.nodes[h as usize].clone();
        self.nodes.push(copy);
        (self.nodes.len() - 1) as u32
    }

    fn rotate_left(&mut self, h: u32) -> u32 {
        let x = self.own(self.right(h));
        let xl = self.left(x);
        self.n(h).right = xl;
        self.n(x).left = h;
        let hr = self.nodes[h as usize].red;
        self.n(x).red = hr;
        self.n(h).red = true;
        x
    }

    fn rotate_right(&mut self, h: u32) -> u32 {
        let x = self.own(self.left(h));
        let xr = self.right(x);
        self.n(h).left = xr;
        self.n(x).right = h;
        let hr = self.nodes[h as usize].red;
        self.n(x).red = hr;
        self.n(h).red = true;
        x
    }

    fn flip(&mut self, h: u32) {
        self.n(h).red ^= true;
        let l = self.left(h);
        if l != NIL {
            let l = self.own(l);
            self.n(l).red ^= true;
            self.n(h).left = l;
        }
        let r = self.right(h);
        if r != NIL {
            let r = self.own(r);
            self.n(r).red ^= true;
            self.n(h).right = r;
        }
    }

    fn fix_up(&mut self, mut h: u32) -> u32 {
        if self.is_red(self.right(h)) && !self.is_red(self.left(h)) {
            h = self.rotate_left(h);
        }
        if self.is_red(self.left(h)) && self.is_red(self.left(self.left(h))) {
            h = self.rotate_right(h);
        }
        if self.is_red(self.left(h)) && self.is_red(self.right(h)) {
            self.flip(h);
        }
        h
    }

    fn balance(&mut self, mut h: u32) -> u32 {
        if self.is_red(self.right(h)) {
            h = self.rotate_left(h);
        }
        if self.is_red(self.left(h)) && self.is_red(self.left(self.left(h))) {
            h = self.rotate_right(h);
        }
        if self.is_red(self.left(h)) && self.is_red(self.right(h)) {
            self.flip(h);
        }
        h
    }

    fn ins(&mut self, h: u32, key: K, val: V, cmp: Cmp<K>) -> u32 {
        if h == NIL {
            self.nodes.push(Node {
                key,
                val,
                left: NIL,
                right: NIL,
                red: true,
            });
            return (self.nodes.len() - 1) as u32;
        }
        let h = self.own(h);
        match cmp(&key, &self.nodes[h as usize].key) {
            Ordering::Less => {
                let l = self.ins(self.left(h), key, val, cmp);
                self.n(h).left = l;
            }
            Ordering::Greater => {
                let r = self.ins(self.right(h), key, val, cmp);
                self.n(h).right = r;
            }
            Ordering::Equal => {
                let node = self.n(h);
                node.key = key;
                node.val = val;
            }
        }
        self.fix_up(h)
    }

    fn move_red_left(&mut self, mut h: u32) -> u32 {
        self.flip(h);
        if self.is_red(self.left(self.right(h))) {
            let r = self.own(self.right(h));
            let r = self.rotate_right(r);
            self.n(h).right = r;
            h = self.rotate_left(h);
            self.flip(h);
        }
        h
    }

    fn move_red_right(&mut self, mut h: u32) -> u32 {
        self.flip(h);
        if self.is_red(self.left(self.left(h))) {
            h = self.rotate_right(h);
            self.flip(h);
        }
        h
    }

    fn del_min(&mut self, h: u32) -> u32 {
        if self.left(h) == NIL {
            return NIL;
        }
        let mut h = self.own(h);
        if !self.is_red(self.left(h)) && !self.is_red(self.left(self.left(h))) {
            h = self.move_red_left(h);
        }
        let l = self.del_min(self.left(h));
        self.n(h).left = l;
        self.balance(h)
    }

    fn min_node(&self, mut h: u32) -> u32 {
        while self.left(h) != NIL {
            h = self.left(h);
        }
        h
    }

    fn del(&mut self, h: u32, key: &K, cmp: Cmp<K>) -> u32 {
        let mut h = self.own(h);
        if cmp(key, &self.nodes[h as usize].key) == Ordering::Less {
            if !self.is_red(self.left(h)) && !self.is_red(self.left(self.left(h))) {
                h = self.move_red_left(h);
            }
            let l = self.del(self.left(h), key, cmp);
            self.n(h).left = l;
        } else {
            if self.is_red(self.left(h)) {
                h = self.rotate_right(h);
            }
            if cmp(key, &self.nodes[h as usize].key) == Ordering::Equal && self.right(h) == NIL {
                return NIL;
            }
            if !self.is_red(self.right(h)) && !self.is_red(self.left(self.right(h))) {
                h = self.move_red_right(h);
            }
            if cmp(key, &self.nodes[h as usize].key) == Ordering::Equal {
                let m = self.min_node(self.right(h));
                let (mk, mv) = (
                    self.nodes[m as usize].key.clone(),
                    self.nodes[m as usize].val.clone(),
                );
                let r = self.del_min(self.right(h));
                let node = self.n(h);
                node.key = mk;
                node.val = mv;
                node.right = r;
            } else {
                let r = self.del(self.right(h), key, cmp);
                self.n(h).right = r;
            }
        }
        self.balance(h)
    }

    /// Inserts or replaces `key` under a caller-supplied order.
    pub fn insert_by(
        &mut self,
        root: Version,
        key: K,
        val: V,
        cmp: impl Fn(&K, &K) -> Ordering,
    ) -> Version {
        self.fresh_from = self.nodes.len();
        let r = self.ins(root.0, key, val, &cmp);
        self.n(r).red = false;
        Version(r)
    }

    /// Removes `key` if present under a caller-supplied order.
    pub fn remove_by(
        &mut self,
        root: Version,
        key: &K,
        cmp: impl Fn(&K, &K) -> Ordering,
    ) -> Version {
        if self.get_by(root, |k| cmp(key, k)).is_none() {
            return root;
        }
        self.fresh_from = self.nodes.len();
        let mut h = self.own(root.0);
        if !self.is_red(self.left(h)) && !self.is_red(self.right(h)) {
            self.n(h).red = true;
        }
        h = self.del(h, key, &cmp);
        if h != NIL {
            let h2 = self.own(h);
            self.n(h2).red = false;
            h = h2;
        }
        Version(h)
    }

    /// Lookup where `probe(k)` orders the target relative to `k`.
    pub fn get_by(&self, root: Version, probe: impl Fn(&K) -> Ordering) -> Option<(&K, &V)> {
        let mut h = root.0;
        while h != NIL {
            let node = &self.nodes[h as usize];
            match probe(&node.key) {
                Ordering::Less => h = node.left,
                Ordering::Greater => h = node.right,
                Ordering::Equal => return Some((&node.key, &node.val)),
            }
        }
        None
    }

    /// Last entry in order for which the monotone predicate `below` holds.
    pub fn last_where(&self, root: Version, below: impl Fn(&K) -> bool) -> Option<(&K, &V)> {
        let mut h = root.0;
        let mut best = None;
        while h != NIL {
            let node = &self.nodes[h as usize];
            if below(&node.key) {
                best = Some((&node.key, &node.val));
                h = node.right;
            } else {
                h = node.left;
            }
        }
        best
    }

    /// First entry in order for which the monotone predicate `above` holds.
    pub fn first_where(&self, root: Version, above: impl Fn(&K) -> bool) -> Option<(&K, &V)> {
        let mut h = root.0;
        let mut best = None;
        while h != NIL {
            let node = &self.nodes[h as usize];
            if above(&node.key) {
                best = Some((&node.key, &node.val));
                h = node.left;
            } else {
                h = node.right;
            }
        }
        best
    }

    /// In-order traversal of one version.
    pub fn iter(&self, root: Version) -> Iter<'_, K, V> {
        let mut it = Iter {
            map: self,
            stack: Vec::new(),
        };
        it.push_left(root.0);
        it
    }

    pub fn len(&self, root: Version) -> usize {
        self.iter(root).count()
    }

    /// Checks the red-black invariants of one version; returns the black height.
    pub fn check_invariants(
        &self,
        root: Version,
        cmp: impl Fn(&K, &K) -> Ordering,
    ) -> Result<usize, String> {
        if self.is_red(root.0) {
            return Err("red root".into());
        }
        let keys: Vec<&K> = self.iter(root).map(|(k, _)| k).collect();
        if keys.windows(2).any(|w| cmp(w[0], w[1]) != Ordering::Less) {
            return Err("keys out of order".into());
        }
        self.black_height(root.0)
    }

    fn black_height(&self, h: u32) -> Result<usize, String> {
        if h == NIL {
            return Ok(1);
        }
        let (l, r) = (self.left(h), self.right(h));
        if self.is_red(r) {
            return Err("right-leaning red link".into());
        }
        if self.is_red(h) && self.is_red(l) {
            return Err("two reds in a row".into());
        }
        let bl = self.black_height(l)?;
        let br = self.black_height(r)?;
        if bl != br {
            return Err("unequal black height".into());
        }
        Ok(bl + usize::from(!self.is_red(h)))
    }
}

impl<K: Ord + Clone, V: Clone> PersistentMap<K, V> {
    pub fn insert(&mut self, root: Version, key: K, val: V) -> Version {
        self.insert_by(root, key, val, K::cmp)
    }

    pub fn remove(&mut self, root: Version, key: &K) -> Version {
        self.remove_by(root, key, K::cmp)
    }

    pub fn get(&self, root: Version, key: &K) -> Option<&V> {
        self.get_by(root, |k| key.cmp(k)).map(|(_, v)| v)
    }

    pub fn contains(&self, root: Version, key: &K) -> bool {
        self.get(root, key).is_some()
    }
}

pub struct Iter<'a, K, V> {
    map: &'a PersistentMap<K, V>,
    stack: Vec<u32>,
}

impl<'a, K, V> Iter<'a, K, V> {
    fn push_left(&mut self, mut h: u32) {
        while h != NIL {
            self.stack.push(h);
            h = self.map.nodes[h as usize].left;
        }
    }
}

impl<'a, K, V> Iterator for Iter<'a, K, V> {
    type Item = (&'a K, &'a V);

    fn next(&mut self) -> Option<Self::Item> {
        let h = self.stack.pop()?;
        let node = &self.map.nodes[h as usize];
        self.push_left(node.right);
        Some((&node.key, &node.val))
    }
}
