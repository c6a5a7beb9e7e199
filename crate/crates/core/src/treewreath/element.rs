use rand::seq::SliceRandom;
use rand::Rng;

use super::{TreeAddress, TreeError, TreeShape};
use crate::permgroup::Permutation;

/// An automorphism of `T_n` stored as its portrait: one permutation of the
/// child labels `{0..d-1}` for every internal vertex.
///
/// The element sends the path `(l_1, l_2, …)` (root first) to
/// `(a_root(l_1), a_{v_1}(l_2), …)` where `v_k` is the *source* vertex
/// reached after `k` steps. In wreath coordinates `σ = ((h_1,…,h_d); g)`
/// this is `σ(i·w) = g(i)·h_i(w)`, so `((h); g) = ((1); g)((h); 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathElement {
    shape: TreeShape,
    // level order, `d` entries per internal vertex
    perms: Vec<u32>,
}

impl WreathElement {
    pub fn identity(shape: TreeShape) -> Self {
        let d = shape.d as u32;
        let perms = (0..shape.internal_vertices())
            .flat_map(|_| 0..d)
            .collect();
        WreathElement { shape, perms }
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    /// Builds from 0-based vertex permutations listed in level order.
    pub fn from_vertex_perms(shape: TreeShape, perms: &[Vec<usize>]) -> Result<Self, TreeError> {
        if perms.len() != shape.internal_vertices() {
            return Err(TreeError::Parse(format!(
                "expected {} vertex permutations, got {}",
                shape.internal_vertices(),
                perms.len()
            )));
        }
        let mut out = Vec::with_capacity(perms.len() * shape.d);
        for p in perms {
            check_local_perm(shape.d, p.iter().copied())?;
            out.extend(p.iter().map(|&x| x as u32));
        }
        Ok(WreathElement { shape, perms: out })
    }

    fn slot(&self, level: usize, v: usize) -> usize {
        (self.shape.level_offset(level) + v) * self.shape.d
    }

    /// The permutation at vertex `v` of `level` (0-based images).
    pub fn vertex_perm(&self, level: usize, v: usize) -> &[u32] {
        let s = self.slot(level, v);
        &self.perms[s..s + self.shape.d]
    }

    fn vertex_perm_mut(&mut self, level: usize, v: usize) -> &mut [u32] {
        let s = self.slot(level, v);
        let d = self.shape.d;
        &mut self.perms[s..s + d]
    }

    /// Replaces the permutation at `addr` (an internal vertex).
    pub fn with_vertex_perm(mut self, addr: &TreeAddress, perm: &Permutation) -> Result<Self, TreeError> {
        if addr.level() >= self.shape.n {
            return Err(TreeError::AddressTooDeep {
                level: addr.level(),
                n: self.shape.n - 1,
            });
        }
        if let Some(&label) = addr
            .labels_root_first()
            .iter()
            .find(|&&l| l == 0 || l > self.shape.d)
        {
            return Err(TreeError::InvalidAddress {
                label,
                d: self.shape.d,
            });
        }
        if perm.degree() != self.shape.d {
            return Err(TreeError::NotAPermutation(self.shape.d));
        }
        let v = addr.vertex_number(self.shape.d);
        for (slot, x) in self.vertex_perm_mut(addr.level(), v).iter_mut().zip(perm.images()) {
            *slot = x as u32;
        }
        Ok(self)
    }

    /// Assembles `((h_1,…,h_d); g)` from a top permutation and `d` child
    /// sections of depth `n - 1` (no children when `n = 1`).
    pub fn from_sections(
        shape: TreeShape,
        top: &Permutation,
        children: &[WreathElement],
    ) -> Result<Self, TreeError> {
        if top.degree() != shape.d {
            return Err(TreeError::NotAPermutation(shape.d));
        }
        let expected_children = if shape.n == 1 { 0 } else { shape.d };
        if children.len() != expected_children {
            return Err(TreeError::Parse(format!(
                "expected {expected_children} child sections, got {}",
                children.len()
            )));
        }
        let mut out = WreathElement::identity(shape);
        for (slot, x) in out.vertex_perm_mut(0, 0).iter_mut().zip(top.images()) {
            *slot = x as u32;
        }
        if let Some(sub) = shape.subtree(1) {
            for (i, child) in children.iter().enumerate() {
                if child.shape != sub {
                    return Err(TreeError::ShapeMismatch(child.shape, sub));
                }
                for k in 0..sub.n {
                    let width = sub.level_size(k);
                    for u in 0..width {
                        let dst = out.slot(k + 1, i * width + u);
                        let src = child.slot(k, u);
                        out.perms[dst..dst + shape.d].copy_from_slice(&child.perms[src..src + shape.d]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The root permutation `g`.
    pub fn top(&self) -> Permutation {
        Permutation::from_images(self.vertex_perm(0, 0).iter().map(|&x| x as usize).collect())
            .expect("vertex permutations are bijections")
    }

    /// The section at vertex `v` of `level`: the portrait of the subtree
    /// below it, as an automorphism of `T_{n-level}`. `None` at the leaves.
    pub fn section(&self, level: usize, v: usize) -> Option<WreathElement> {
        let sub = self.shape.subtree(level)?;
        let d = self.shape.d;
        let mut perms = Vec::with_capacity(sub.internal_vertices() * d);
        for k in 0..sub.n {
            let width = sub.level_size(k);
            let start = self.slot(level + k, v * width);
            perms.extend_from_slice(&self.perms[start..start + width * d]);
        }
        Some(WreathElement { shape: sub, perms })
    }

    /// Images of every vertex, level by level (`levels[k][v]`).
    pub fn vertex_images(&self) -> Vec<Vec<usize>> {
        let d = self.shape.d;
        let mut levels = Vec::with_capacity(self.shape.n + 1);
        levels.push(vec![0usize]);
        for k in 0..self.shape.n {
            let prev = &levels[k];
            let mut next = vec![0usize; prev.len() * d];
            for (v, &img) in prev.iter().enumerate() {
                let p = self.vertex_perm(k, v);
                for j in 0..d {
                    next[v * d + j] = img * d + p[j] as usize;
                }
            }
            levels.push(next);
        }
        levels
    }

    /// Image of a single vertex.
    pub fn image_of_vertex(&self, level: usize, v: usize) -> usize {
        let d = self.shape.d;
        let mut digits = Vec::with_capacity(level);
        let mut x = v;
        for _ in 0..level {
            digits.push(x % d);
            x /= d;
        }
        let (mut src, mut img) = (0usize, 0usize);
        for (k, &j) in digits.iter().rev().enumerate() {
            let p = self.vertex_perm(k, src);
            img = img * d + p[j] as usize;
            src = src * d + j;
        }
        img
    }

    /// The induced permutation of the `d^k` vertices of level `k`.
    pub fn level_action(&self, k: usize) -> Permutation {
        let images = self.vertex_images().swap_remove(k);
        Permutation::from_images(images).expect("portraits act bijectively")
    }

    /// The action of the section at `(level, v)` on its descendants at
    /// relative depth `depth`.
    pub fn section_action(&self, level: usize, v: usize, depth: usize) -> Permutation {
        let d = self.shape.d;
        let mut cur = vec![0usize];
        for r in 0..depth {
            let width = d.pow(r as u32);
            let mut next = vec![0usize; cur.len() * d];
            for u in 0..cur.len() {
                let p = self.vertex_perm(level + r, v * width + u);
                for j in 0..d {
                    next[u * d + j] = cur[u] * d + p[j] as usize;
                }
            }
            cur = next;
        }
        Permutation::from_images(cur).expect("portraits act bijectively")
    }

    /// The group product `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WreathElement) -> Result<WreathElement, TreeError> {
        if self.shape != other.shape {
            return Err(TreeError::ShapeMismatch(self.shape, other.shape));
        }
        let d = self.shape.d;
        let images = other.vertex_images();
        let mut perms = Vec::with_capacity(self.perms.len());
        for (k, level) in images.iter().take(self.shape.n).enumerate() {
            for (v, &image) in level.iter().enumerate() {
                let outer = self.vertex_perm(k, image);
                let inner = other.vertex_perm(k, v);
                perms.extend((0..d).map(|j| outer[inner[j] as usize]));
            }
        }
        Ok(WreathElement {
            shape: self.shape,
            perms,
        })
    }

    pub fn inverse(&self) -> WreathElement {
        let d = self.shape.d;
        let images = self.vertex_images();
        let mut out = WreathElement::identity(self.shape);
        for (k, level) in images.iter().take(self.shape.n).enumerate() {
            for (u, &image) in level.iter().enumerate() {
                let src = self.vertex_perm(k, u).to_vec();
                let dst = out.vertex_perm_mut(k, image);
                for j in 0..d {
                    dst[src[j] as usize] = j as u32;
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        let d = self.shape.d as u32;
        self.perms
            .chunks(self.shape.d)
            .all(|p| p.iter().copied().eq(0..d))
    }

    /// The induced permutation of the `d^n` leaves.
    pub fn to_flat(&self) -> Permutation {
        self.level_action(self.shape.n)
    }

    /// Recovers the portrait of a tree-preserving leaf permutation.
    pub fn from_flat(shape: TreeShape, flat: &Permutation) -> Result<WreathElement, TreeError> {
        if flat.degree() != shape.leaves() {
            return Err(TreeError::NotTreeAutomorphism);
        }
        let d = shape.d;
        let leaves: Vec<usize> = flat.images().collect();
        let mut levels: Vec<Vec<usize>> = Vec::with_capacity(shape.n + 1);
        for k in 0..shape.n {
            let span = shape.level_size(shape.n - k);
            let width = shape.level_size(k);
            let mut img = vec![0usize; width];
            for (v, slot) in img.iter_mut().enumerate() {
                *slot = leaves[v * span] / span;
            }
            for (x, &y) in leaves.iter().enumerate() {
                if y / span != img[x / span] {
                    return Err(TreeError::NotTreeAutomorphism);
                }
            }
            levels.push(img);
        }
        levels.push(leaves);
        let mut out = WreathElement::identity(shape);
        for (k, pair) in levels.windows(2).enumerate() {
            for (v, &image) in pair[0].iter().enumerate() {
                let base = image * d;
                let p: Vec<u32> = (0..d).map(|j| (pair[1][v * d + j] - base) as u32).collect();
                check_local_perm(d, p.iter().map(|&x| x as usize))?;
                out.vertex_perm_mut(k, v).copy_from_slice(&p);
            }
        }
        Ok(out)
    }

    /// A uniformly random automorphism of `T_n`.
    pub fn random<R: Rng + ?Sized>(shape: TreeShape, rng: &mut R) -> WreathElement {
        let mut out = WreathElement::identity(shape);
        for chunk in out.perms.chunks_mut(shape.d) {
            chunk.shuffle(rng);
        }
        out
    }
}

fn check_local_perm(d: usize, images: impl Iterator<Item = usize>) -> Result<(), TreeError> {
    let mut seen = vec![false; d];
    let mut count = 0;
    for x in images {
        if x >= d || seen[x] {
            return Err(TreeError::NotAPermutation(d));
        }
        seen[x] = true;
        count += 1;
    }
    if count != d {
        return Err(TreeError::NotAPermutation(d));
    }
    Ok(())
}
