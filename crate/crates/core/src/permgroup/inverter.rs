use super::Permutation;
use crate::treewreath::WreathElement;

/// A `τ` with `τ σ τ⁻¹ = σ⁻¹`, built top-down: the root part reverses every
/// cycle of the root permutation, and along each cycle `(i_1 … i_k)` the
/// section at `i_1` inverts the cycle product `h_(i_k) ∘ … ∘ h_(i_1)` while
/// the remaining sections are forced by
/// `t_(g(i)) = h_(s(g(i)))⁻¹ ∘ t_i ∘ h_i⁻¹`.
pub fn conjugating_inverter(sigma: &WreathElement) -> WreathElement {
    let shape = sigma.shape();
    let d = shape.d;
    let top = sigma.top();
    let mut s_images = vec![0usize; d];
    let cycles = top.cycles();
    for cycle in &cycles {
        let k = cycle.len();
        for j in 0..k {
            s_images[cycle[j]] = cycle[(k - j) % k];
        }
    }
    let s = Permutation::from_images(s_images).expect("cycle reversal is a bijection");
    if shape.n == 1 {
        return WreathElement::from_sections(shape, &s, &[]).expect("shape matches");
    }
    let h: Vec<WreathElement> = (0..d)
        .map(|i| sigma.section(1, i).expect("n >= 2 has child sections"))
        .collect();
    let h_inv: Vec<WreathElement> = h.iter().map(WreathElement::inverse).collect();
    let mut t: Vec<Option<WreathElement>> = vec![None; d];
    for cycle in &cycles {
        let product = cycle
            .iter()
            .fold(WreathElement::identity(h[0].shape()), |acc, &i| {
                h[i].compose(&acc).expect("sections share a shape")
            });
        let mut current = conjugating_inverter(&product);
        for w in cycle.windows(2) {
            let (i, next) = (w[0], w[1]);
            let forced = h_inv[s.apply(next)]
                .compose(&current)
                .and_then(|x| x.compose(&h_inv[i]))
                .expect("sections share a shape");
            t[i] = Some(current);
            current = forced;
        }
        t[*cycle.last().expect("cycles are nonempty")] = Some(current);
    }
    let children: Vec<WreathElement> = t.into_iter().map(|x| x.expect("every label lies on a cycle")).collect();
    WreathElement::from_sections(shape, &s, &children).expect("shapes match")
}
