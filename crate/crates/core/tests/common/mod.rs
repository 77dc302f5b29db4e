#![allow(dead_code)]

use qdslab_core::{Caps, GroupSpec, IncidenceStructure, QDSet};

pub fn qds(moduli: &[usize], d: &[usize]) -> QDSet {
    QDSet::new(GroupSpec::cyclic_product(moduli).unwrap(), d).unwrap()
}

pub fn coset(moduli: &[usize], d: &[usize]) -> IncidenceStructure {
    IncidenceStructure::build(&qds(moduli, d)).unwrap()
}

pub fn fano_set() -> QDSet {
    qds(&[7], &[0, 1, 3])
}

pub fn fano() -> IncidenceStructure {
    coset(&[7], &[0, 1, 3])
}

pub fn canonical(moduli: &[usize]) -> IncidenceStructure {
    IncidenceStructure::build_canonical(moduli, &Caps::default()).unwrap()
}

pub fn sum(parts: &[QDSet]) -> IncidenceStructure {
    IncidenceStructure::build_sum(parts, &Caps::default()).unwrap()
}

/// `D(C_k, {0,1}) ⊕ Fano`.
pub fn multi_fano(k: usize) -> IncidenceStructure {
    sum(&[qds(&[k], &[0, 1]), fano_set()])
}

/// `D(C₃², 𝒟₂) ⊕ D(C₁₃, D)`.
pub fn pappus_plus(d: &[usize]) -> IncidenceStructure {
    let a = qds(&[3], &[0, 1]);
    sum(&[a.clone(), a, qds(&[13], d)])
}

/// Named structures used across suites, smallest first.
pub fn fixtures() -> Vec<(&'static str, IncidenceStructure)> {
    let a3 = qds(&[3], &[0, 1]);
    vec![
        ("c6_02", coset(&[6], &[0, 2])),
        ("triangle", coset(&[3], &[0, 1])),
        ("pentagon", coset(&[5], &[0, 1])),
        ("fano", fano()),
        ("fano_neg", coset(&[7], &[0, 4, 6])),
        ("c8_013", coset(&[8], &[0, 1, 3])),
        ("pappus", canonical(&[3, 3])),
        ("pg23", coset(&[13], &[0, 1, 3, 9])),
        ("c4c4", canonical(&[4, 4])),
        ("c3c4", canonical(&[3, 4])),
        ("multifano_3", multi_fano(3)),
        ("c3pow3", canonical(&[3, 3, 3])),
        ("c8_c5_sum", sum(&[qds(&[8], &[0, 1, 3]), qds(&[5], &[0, 1])])),
        ("multifano_7", multi_fano(7)),
        (
            "f_power2",
            IncidenceStructure::build_power(&fano_set(), 2, &Caps::default()).unwrap(),
        ),
        ("pappus_fano", sum(&[a3.clone(), a3, fano_set()])),
        ("m1", pappus_plus(&[0, 1, 3, 9])),
        ("m2", pappus_plus(&[0, 2, 8, 12])),
        (
            "n_power2",
            IncidenceStructure::build_power(&qds(&[13], &[0, 1, 3, 9]), 2, &Caps::default()).unwrap(),
        ),
    ]
}

/// Automorphism count by plain backtracking over point permutations: a
/// partial map must preserve collinearity and non-collinearity of pairs,
/// and a complete one must send every line onto a line.
pub fn naive_automorphism_count(s: &IncidenceStructure) -> u64 {
    let n = s.n_points();
    // join[a][b] = line through a and b, usize::MAX if none
    let mut join = vec![vec![usize::MAX; n]; n];
    for (l, line) in s.lines().iter().enumerate() {
        for &a in line {
            for &b in line {
                if a != b {
                    join[a][b] = l;
                }
            }
        }
    }
    let mut lines: Vec<Vec<usize>> = s.lines().to_vec();
    for l in &mut lines {
        l.sort_unstable();
    }
    lines.sort();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = 0;
    extend(0, n, &join, &lines, &mut image, &mut used, &mut count);
    count
}

fn extend(
    x: usize,
    n: usize,
    join: &[Vec<usize>],
    lines: &[Vec<usize>],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    count: &mut u64,
) {
    if x == n {
        let mut mapped: Vec<Vec<usize>> = lines
            .iter()
            .map(|l| {
                let mut m: Vec<usize> = l.iter().map(|&p| image[p]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        mapped.sort();
        if mapped == lines {
            *count += 1;
        }
        return;
    }
    for c in 0..n {
        if used[c] {
            continue;
        }
        let none = usize::MAX;
        if (0..x).any(|y| (join[x][y] == none) != (join[c][image[y]] == none)) {
            continue;
        }
        // points of a line through x must land on the image line
        let on_lines = (0..x).filter(|&y| join[x][y] != none).all(|y| {
            let l = join[c][image[y]];
            (0..x).all(|z| join[x][y] != join[x][z] || z == y || join[c][image[z]] == l)
        });
        if !on_lines {
            continue;
        }
        image[x] = c;
        used[c] = true;
        extend(x + 1, n, join, lines, image, used, count);
        used[c] = false;
        image[x] = usize::MAX;
    }
}
