use super::SearchBounds;
use crate::semantics::{quasi_transitivity_violation, GeneralFrame, OrdinaryFrame, QtVariant};
use crate::worlds::WorldSet;

/// Largest carrier the enumerators accept: families of world sets are
/// packed into one machine word indexed by set bitmask.
pub const MAX_ENUM_WORLDS: usize = 6;

fn world_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn permute_r(r: &[WorldSet], perm: &[usize]) -> Vec<WorldSet> {
    let mut out = vec![WorldSet::EMPTY; r.len()];
    for (w, s) in r.iter().enumerate() {
        out[perm[w]] = s.permute(perm);
    }
    out
}

fn encode_r(r: &[WorldSet]) -> Vec<u64> {
    r.iter().map(|s| s.0).collect()
}

/// Strict partial orders on `n` worlds, one per isomorphism class: the
/// representative has the lexicographically least successor encoding.
pub fn canonical_orders(n: usize) -> Vec<Vec<WorldSet>> {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut r = vec![WorldSet::EMPTY; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                r[a].insert(b);
            }
        }
        let transitive = (0..n).all(|a| r[a].iter().all(|b| r[b].is_subset(r[a])));
        if !transitive || (0..n).any(|a| r[a].contains(a)) {
            continue;
        }
        let enc = encode_r(&r);
        if perms.iter().all(|p| encode_r(&permute_r(&r, p)) >= enc) {
            out.push(r);
        }
    }
    out.sort_by_key(|r| encode_r(r));
    out
}

fn automorphisms(r: &[WorldSet]) -> Vec<Vec<usize>> {
    permutations(r.len())
        .into_iter()
        .filter(|p| permute_r(r, p) == r)
        .collect()
}

/// Per-relabeling table mapping a set bitmask to its image.
fn set_table(perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    (0..1u64 << n)
        .map(|s| WorldSet(s).permute(perm).0)
        .collect()
}

fn permute_family(fam: u64, table: &[u64]) -> u64 {
    let mut out = 0u64;
    let mut bits = fam;
    while bits != 0 {
        let s = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << table[s];
    }
    out
}

fn family_sets(fam: u64) -> impl Iterator<Item = WorldSet> {
    WorldSet(fam).iter().map(|s| WorldSet(s as u64))
}

/// Entry encoding of one `S_w`: `entry[u]` describes `u`'s images.
type Block = Vec<u64>;

/// Shared machinery for enumerating relation blocks per world over a
/// canonical `R`, keeping only products that are least under the
/// automorphisms of `R`.
struct Product {
    r: Vec<WorldSet>,
    blocks: Vec<Vec<Block>>,
    /// `(perm, table)` for each non-identity automorphism.
    auts: Vec<(Vec<usize>, Vec<u64>)>,
    family: bool,
    odometer: Vec<usize>,
    done: bool,
}

impl Product {
    fn new(r: Vec<WorldSet>, blocks: Vec<Vec<Block>>, family: bool) -> Self {
        let n = r.len();
        let auts = automorphisms(&r)
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
            .map(|p| {
                let t = set_table(&p);
                (p, t)
            })
            .collect();
        let done = blocks.iter().any(Vec::is_empty);
        Product {
            r,
            blocks,
            auts,
            family,
            odometer: vec![0; n],
            done,
        }
    }

    fn current(&self) -> Vec<&Block> {
        self.odometer
            .iter()
            .enumerate()
            .map(|(w, &i)| &self.blocks[w][i])
            .collect()
    }

    fn advance(&mut self) {
        for w in (0..self.odometer.len()).rev() {
            self.odometer[w] += 1;
            if self.odometer[w] < self.blocks[w].len() {
                return;
            }
            self.odometer[w] = 0;
        }
        self.done = true;
    }

    fn is_canonical(&self, cur: &[&Block]) -> bool {
        let n = self.r.len();
        let flat: Vec<u64> = cur.iter().flat_map(|b| b.iter().copied()).collect();
        self.auts.iter().all(|(p, table)| {
            let mut img = vec![0u64; n * n];
            for w in 0..n {
                for u in 0..n {
                    let e = cur[w][u];
                    img[p[w] * n + p[u]] = if self.family {
                        permute_family(e, table)
                    } else {
                        table[e as usize]
                    };
                }
            }
            img >= flat
        })
    }

    fn next_canonical(&mut self) -> Option<Vec<Block>> {
        while !self.done {
            let cur = self.current();
            let keep = self.is_canonical(&cur);
            let out: Vec<Block> = cur.into_iter().cloned().collect();
            self.advance();
            if keep {
                return Some(out);
            }
        }
        None
    }
}

/// Families for `u` inside `R[w]`: every family of nonempty subsets of
/// `R[w]` containing `required`, up-closed when `monotone`.
fn families(rw: WorldSet, required: u64, monotone: bool) -> Vec<u64> {
    let optional: Vec<u64> = rw
        .nonempty_subsets()
        .into_iter()
        .map(|s| s.0)
        .filter(|s| required >> s & 1 == 0)
        .collect();
    let up_closed = |fam: u64| {
        family_sets(fam).all(|s| {
            rw.subsets_by_size()
                .into_iter()
                .filter(|z| s.is_subset(*z))
                .all(|z| fam >> z.0 & 1 == 1)
        })
    };
    (0u64..1 << optional.len())
        .map(|mask| {
            optional
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .fold(required, |acc, (_, s)| acc | 1 << s)
        })
        .filter(|&fam| !monotone || up_closed(fam))
        .collect()
}

/// All legal `S_w` blocks for one world `w` under `qt`.
fn general_blocks(r: &[WorldSet], w: usize, qt: QtVariant) -> Vec<Block> {
    let n = r.len();
    let monotone = qt.requires_monotonicity();
    let per_u: Vec<(usize, Vec<u64>)> = r[w]
        .iter()
        .map(|u| {
            let required = std::iter::once(u)
                .chain(r[u].iter())
                .fold(0u64, |acc, v| acc | 1 << WorldSet::singleton(v).0);
            (u, families(r[w], required, monotone))
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_u.len()];
    let mut scratch = GeneralFrame::new(world_names(n), qt).expect("small carrier");
    scratch.r = r.to_vec();
    loop {
        let mut block = vec![0u64; n];
        for (k, (u, fams)) in per_u.iter().enumerate() {
            block[*u] = fams[idx[k]];
        }
        for u in 0..n {
            scratch.s[w][u] = family_sets(block[u]).collect();
        }
        if quasi_transitivity_violation(&scratch, qt).is_none() {
            out.push(block);
        }
        let mut k = per_u.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_u[k].1.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All legal ordinary `S_w` blocks: preorders on `R[w]` containing `R`.
fn ordinary_blocks(r: &[WorldSet], w: usize) -> Vec<Block> {
    let n = r.len();
    let rw = r[w];
    let optional: Vec<(usize, usize)> = rw
        .iter()
        .flat_map(|u| rw.iter().map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && !r[u].contains(v))
        .collect();
    (0u64..1 << optional.len())
        .filter_map(|mask| {
            let mut block = vec![0u64; n];
            for u in rw.iter() {
                block[u] = r[u].with(u).intersection(rw).0;
            }
            for (k, &(u, v)) in optional.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    block[u] |= 1 << v;
                }
            }
            let transitive = rw
                .iter()
                .all(|u| WorldSet(block[u]).iter().all(|v| block[v] & !block[u] == 0));
            transitive.then_some(block)
        })
        .collect()
}

/// Lazily enumerates frames world count by world count.
struct Frames<T> {
    max_worlds: usize,
    n: usize,
    orders: std::vec::IntoIter<Vec<WorldSet>>,
    product: Option<Product>,
    blocks: Box<dyn Fn(&[WorldSet], usize) -> Vec<Block>>,
    family: bool,
    build: Box<dyn Fn(&[WorldSet], Vec<Block>) -> T>,
}

impl<T> Iterator for Frames<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        loop {
            if let Some(p) = self.product.as_mut() {
                if let Some(blocks) = p.next_canonical() {
                    return Some((self.build)(&p.r, blocks));
                }
                self.product = None;
            }
            match self.orders.next() {
                Some(r) => {
                    let blocks = (0..r.len()).map(|w| (self.blocks)(&r, w)).collect();
                    self.product = Some(Product::new(r, blocks, self.family));
                }
                None => {
                    if self.n >= self.max_worlds {
                        return None;
                    }
                    self.n += 1;
                    self.orders = canonical_orders(self.n).into_iter();
                }
            }
        }
    }
}

fn clamp(max_worlds: usize) -> usize {
    max_worlds.min(MAX_ENUM_WORLDS)
}

/// Legal generalised frames with `1..=bounds.max_worlds` worlds, one per
/// isomorphism class, satisfying conditions a)–d), the chosen
/// quasi-transitivity variant and, for variant 2, monotonicity.
pub fn enumerate_frames(bounds: &SearchBounds) -> impl Iterator<Item = GeneralFrame> {
    let qt = bounds.qt;
    Frames {
        max_worlds: clamp(bounds.max_worlds),
        n: 0,
        orders: Vec::new().into_iter(),
        product: None,
        blocks: Box::new(move |r: &[WorldSet], w| general_blocks(r, w, qt)),
        family: true,
        build: Box::new(move |r: &[WorldSet], blocks: Vec<Block>| {
            let n = r.len();
            let mut f = GeneralFrame::new(world_names(n), qt).expect("small carrier");
            f.r = r.to_vec();
            for (w, block) in blocks.into_iter().enumerate() {
                for (u, fam) in block.into_iter().enumerate() {
                    f.s[w][u] = family_sets(fam).collect();
                }
            }
            f
        }),
    }
}

/// Legal ordinary frames with `1..=max_worlds` worlds, one per isomorphism
/// class.
pub fn enumerate_ordinary_frames(max_worlds: usize) -> impl Iterator<Item = OrdinaryFrame> {
    Frames {
        max_worlds: clamp(max_worlds),
        n: 0,
        orders: Vec::new().into_iter(),
        product: None,
        blocks: Box::new(ordinary_blocks),
        family: false,
        build: Box::new(|r: &[WorldSet], blocks: Vec<Block>| {
            let n = r.len();
            let mut f = OrdinaryFrame::new(world_names(n)).expect("small carrier");
            f.r = r.to_vec();
            for (w, block) in blocks.into_iter().enumerate() {
                for (u, s) in block.into_iter().enumerate() {
                    f.s[w][u] = WorldSet(s);
                }
            }
            f
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{validate_general, validate_ordinary};

    #[test]
    fn order_counts() {
        // Unlabelled posets on 1..5 points.
        let counts: Vec<usize> = (1..=5).map(|n| canonical_orders(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn one_world() {
        let b = SearchBounds {
            max_worlds: 1,
            ..SearchBounds::default()
        };
        assert_eq!(enumerate_frames(&b).count(), 1);
        assert_eq!(enumerate_ordinary_frames(1).count(), 1);
    }

    #[test]
    fn emitted_frames_validate() {
        for qt in QtVariant::all() {
            let b = SearchBounds {
                max_worlds: 3,
                qt,
                ..SearchBounds::default()
            };
            for f in enumerate_frames(&b) {
                assert!(validate_general(&f).ok(), "qt {qt}: {f:?}");
            }
        }
        for f in enumerate_ordinary_frames(3) {
            assert!(validate_ordinary(&f).ok(), "{f:?}");
        }
    }
}
