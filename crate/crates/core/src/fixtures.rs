//! Standard models: spheres, projective spaces and the worked examples.

use crate::algebra::cdga::FreeCdga;
use crate::algebra::poly::Polynomial;
use crate::algebra::rational::{frac, q, Q};
use crate::error::Result;
use crate::invariants::MinimalModel;
use crate::lie::{FreeDgl, FreeLie, LieElement};

fn minimal(gens: &[(&str, i32)], dv: impl Fn(&[i32]) -> Vec<Polynomial>, cap: i32) -> MinimalModel {
    let names = gens.iter().map(|(n, _)| n.to_string()).collect();
    let degs: Vec<i32> = gens.iter().map(|(_, d)| *d).collect();
    let d = dv(&degs);
    MinimalModel::new(FreeCdga::new(names, degs, d, cap).expect("fixture model")).expect("fixture is minimal")
}

fn default_cap(top: i32) -> i32 {
    2 * top + 2
}

/// `S^n`: `∧(x_n)` for odd `n`, `∧(x_n, y_{2n-1})`, `dy = x²` for even `n`.
pub fn sphere(n: i32) -> MinimalModel {
    if n % 2 == 1 {
        minimal(&[("x", n)], |_| vec![Polynomial::zero()], default_cap(n))
    } else {
        minimal(
            &[("x", n), ("y", 2 * n - 1)],
            |d| vec![Polynomial::zero(), Polynomial::generator(0).pow(2, d)],
            default_cap(2 * n - 1),
        )
    }
}

/// `CP^n`: `∧(x_2, y_{2n+1})`, `dy = x^{n+1}`.
pub fn cp(n: u32) -> MinimalModel {
    let top = 2 * n as i32 + 1;
    minimal(
        &[("x", 2), ("y", top)],
        |d| vec![Polynomial::zero(), Polynomial::generator(0).pow(n + 1, d)],
        default_cap(top),
    )
}

/// `∧(x_1, x_2, x_3, y)` with `dy = x_1 x_2 x_3`.
pub fn triple_product(a: i32, b: i32, c: i32) -> MinimalModel {
    minimal(
        &[("x1", a), ("x2", b), ("x3", c), ("y", a + b + c - 1)],
        |d| {
            vec![
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::product_of(q(1), &[0, 1, 2], d),
            ]
        },
        default_cap(a + b + c - 1),
    )
}

/// The cubic target with degrees `(5, 6, 7, 17)`.
pub fn example_y() -> MinimalModel {
    triple_product(5, 6, 7)
}

/// `∧(x_3, y_3, z_5, u_7)`, `dz = xy`, `du = xz`: Whitehead length 2.
pub fn depth_two() -> MinimalModel {
    minimal(
        &[("x", 3), ("y", 3), ("z", 5), ("u", 7)],
        |d| {
            vec![
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::product_of(q(1), &[0, 1], d),
                Polynomial::product_of(q(1), &[0, 2], d),
            ]
        },
        16,
    )
}

/// The Cayley plane: `∧(x_8, y_23)`, `dy = x³`.
pub fn cayley_plane() -> MinimalModel {
    minimal(
        &[("x", 8), ("y", 23)],
        |d| vec![Polynomial::zero(), Polynomial::generator(0).pow(3, d)],
        48,
    )
}

/// Quillen model of `S^n`.
pub fn sphere_lie(n: i32) -> FreeDgl {
    FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![n - 1], n).expect("fixture")).expect("fixture")
}

/// Quillen model of `CP^n`: `ι = w_0` and `w_k` of degree `2k+1` with
/// `dw_k = -½ Σ_{i+j=k-1} [w_i, w_j]`. For `n = 2` the cell is attached
/// along `-scale·[ι,ι]`.
pub fn cp_lie(n: usize, scale: &Q) -> FreeDgl {
    let mut names = vec!["i".to_string()];
    let mut degs = vec![1];
    for k in 1..n {
        names.push(format!("w{k}"));
        degs.push(2 * k as i32 + 1);
    }
    let lie = FreeLie::new(names, degs, 2 * n as i32).expect("fixture");
    let mut d = vec![LieElement::zero(0)];
    for k in 1..n {
        let mut z = LieElement::zero(2 * k as i32);
        for i in 0..k {
            let j = k - 1 - i;
            let br = lie.bracket(&lie.generator(i as u32).unwrap(), &lie.generator(j as u32).unwrap());
            let c = if n == 2 { -scale.clone() } else { frac(-1, 2) };
            z = z.add_scaled(&c, &br);
        }
        d.push(z);
    }
    FreeDgl::new(lie, d).expect("fixture")
}

/// `CP² ∨ CP² ∪ e⁴`: cells `i1, i2` in dimension 2 and `w1, w2, w3` in
/// dimension 4 attached along `-[i1,i1]`, `-[i2,i2]`, `-[i1,i2]`.
pub fn two_cp2_and_cell() -> FreeDgl {
    let names = ["i1", "i2", "w1", "w2", "w3"].map(String::from).to_vec();
    let lie = FreeLie::new(names, vec![1, 1, 3, 3, 3], 4).expect("fixture");
    let (a, b) = (lie.generator(0).unwrap(), lie.generator(1).unwrap());
    let d = vec![
        LieElement::zero(0),
        LieElement::zero(0),
        lie.bracket(&a, &a).scale(&q(-1)),
        lie.bracket(&b, &b).scale(&q(-1)),
        lie.bracket(&a, &b).scale(&q(-1)),
    ];
    FreeDgl::new(lie, d).expect("fixture")
}

/// The family `X_n`: `X_0 = S^{m0}` and `X_{i+1}` is `X_i` wedge the spheres
/// `S^{m_j}`, with a cell attached along `[ι_0, [ι_{m_1}, …[ι_{m_{k-1}}, ι_{m_k}]…]]`.
pub fn x_family(m0: i32, ms: &[i32], n: usize) -> Result<FreeDgl> {
    let mut names = vec!["i0".to_string()];
    let mut degs = vec![m0 - 1];
    let mut cells = Vec::new();
    for i in 0..n {
        let first = names.len();
        for (j, &m) in ms.iter().enumerate() {
            names.push(format!("s{i}_{j}"));
            degs.push(m - 1);
        }
        let l = m0 + ms.iter().sum::<i32>() - ms.len() as i32 + 1;
        names.push(format!("e{i}"));
        degs.push(l - 1);
        cells.push((first, names.len() - 1));
    }
    // cells in order of dimension
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&g| (degs[g], g));
    let pos = |g: usize| order.iter().position(|&h| h == g).unwrap() as u32;
    let sorted_names = order.iter().map(|&g| names[g].clone()).collect();
    let sorted_degs: Vec<i32> = order.iter().map(|&g| degs[g]).collect();
    let cap = sorted_degs.iter().copied().max().unwrap_or(1);
    let lie = FreeLie::new(sorted_names, sorted_degs.clone(), cap)?;
    let mut d: Vec<LieElement> = sorted_degs.iter().map(|&k| LieElement::zero(k - 1)).collect();
    for (first, cell) in cells {
        let k = ms.len();
        let mut z = lie.generator(pos(first + k - 1))?;
        for j in (0..k - 1).rev() {
            z = lie.try_bracket(&lie.generator(pos(first + j))?, &z)?;
        }
        z = lie.try_bracket(&lie.generator(pos(0))?, &z)?;
        d[pos(cell) as usize] = z;
    }
    FreeDgl::new(lie, d)
}

/// Every fixture target with its name.
pub fn targets() -> Vec<(String, MinimalModel)> {
    let mut out: Vec<(String, MinimalModel)> = (2..=8).map(|n| (format!("S{n}"), sphere(n))).collect();
    for n in 2..=4 {
        out.push((format!("CP{n}"), cp(n)));
    }
    out.push(("Y(5,6,7)".into(), example_y()));
    out.push(("depth-2".into(), depth_two()));
    out.push(("Cayley".into(), cayley_plane()));
    out
}

/// Every fixture Quillen model with its name.
pub fn sources() -> Vec<(String, FreeDgl)> {
    let mut out: Vec<(String, FreeDgl)> = (2..=8).map(|n| (format!("S{n}"), sphere_lie(n))).collect();
    for n in 2..=4 {
        out.push((format!("CP{n}"), cp_lie(n, &q(1))));
    }
    out.push(("CP2vCP2+e4".into(), two_cp2_and_cell()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::dual_cochains;

    #[test]
    fn fixtures_build() {
        assert_eq!(targets().len(), 13);
        for (name, l) in sources() {
            assert!(dual_cochains(&l).is_ok(), "{name}");
        }
        let x = x_family(2, &[2, 3], 2).unwrap();
        assert_eq!(x.lie().ngens(), 7);
    }
}
