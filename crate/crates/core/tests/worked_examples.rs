//! Small worked cases checked against brute-force oracles written here,
//! independently of the library's own routines.

use tcyclic::bitset::{bits, k_subsets, popcount};
use tcyclic::connectivity::{lambda_mask, local_conn_mask};
use tcyclic::construct::from_graph;
use tcyclic::cyclic::{find_cyclic_ordering, is_t_cyclic_ordering};
use tcyclic::families::{direct_sum, relax, rim_mask, spike, swirl, uniform, wheel, wheel_graph, whirl};
use tcyclic::{construct, CyclicOrdering, ElementSet, Matroid, MatroidRepr, Parity, SearchMode};

/// Rank of a set of integer columns over GF(p) by plain elimination.
fn column_rank(columns: &[Vec<u64>], p: u64) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    let mut m: Vec<Vec<u64>> = (0..rows).map(|i| columns.iter().map(|c| c[i] % p).collect()).collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..columns.len() {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][col], p - 2);
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col] * inv % p;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn linear_columns(repr: &MatroidRepr) -> (u64, Vec<Vec<u64>>) {
    let MatroidRepr::Linear { p, matrix } = repr else {
        panic!("expected a linear representation");
    };
    let n = matrix[0].len();
    let cols = (0..n).map(|j| matrix.iter().map(|row| row[j]).collect()).collect();
    (*p, cols)
}

/// Number of connected components after adding the edges in `mask`.
fn components(vertices: usize, edges: &[(usize, usize)], mask: u32) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut count = vertices;
    for e in bits(mask) {
        let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

fn graph_rank(vertices: usize, edges: &[(usize, usize)], mask: u32) -> usize {
    vertices - components(vertices, edges, mask)
}

fn brute_exchange_ok(m: &Matroid) -> bool {
    let bases = m.bases();
    bases.iter().all(|&b1| {
        bases.iter().all(|&b2| {
            bits(b1 & !b2).all(|x| bits(b2 & !b1).any(|y| bases.contains(&((b1 & !(1 << x)) | (1 << y)))))
        })
    })
}

#[test]
fn spike_and_swirl_ranks_match_column_elimination() {
    for bundle in [spike(4).unwrap(), swirl(4).unwrap(), spike(3).unwrap(), swirl(5).unwrap()] {
        let (p, cols) = linear_columns(&bundle.source);
        for x in 0..=bundle.matroid.ground_mask() {
            let chosen: Vec<Vec<u64>> = bits(x).map(|e| cols[e].clone()).collect();
            assert_eq!(bundle.matroid.rank_mask(x), column_rank(&chosen, p), "{} {x:b}", bundle.label());
        }
    }
}

#[test]
fn spike_legs() {
    let b = spike(4).unwrap();
    let m = &b.matroid;
    // L1 ∪ L2 is a 4-circuit, so it has rank 3.
    assert_eq!(m.rank_mask(0b1111), 3);
    let l1_l3 = m.set(0b11_0011);
    assert!(m.is_cocircuit(&l1_l3).unwrap());
    assert_eq!((m.rank(), m.n()), (4, 8));
    assert_eq!(lambda_mask(m, 0b1111), 2);
    assert!(brute_exchange_ok(m));
    assert!(m.validate_axioms().unwrap());
}

#[test]
fn swirl_non_adjacent_legs_are_independent() {
    let m = swirl(4).unwrap().matroid;
    assert_eq!(m.rank_mask(0b11_0011), 4);
    assert_eq!(local_conn_mask(&m, 0b11, 0b11_0000), 0);
}

#[test]
fn wheel3_routes_and_minor() {
    let (v, edges) = wheel_graph(3);
    let w = wheel(3).unwrap().matroid;
    for x in 0..64u32 {
        assert_eq!(w.rank_mask(x), graph_rank(v, &edges, x));
    }
    // Delete one rim edge: the remaining five edges, relabelled in order.
    let rim_edge = 1;
    let minor = w.delete(&ElementSet::singleton(6, rim_edge).unwrap()).unwrap();
    let kept: Vec<(usize, usize)> = minor.kept.iter().map(|&e| edges[e]).collect();
    assert_eq!(minor.matroid.rank(), 3);
    let spanning: Vec<u32> = k_subsets(5, 3)
        .filter(|&b| components(v, &kept, b) == 1)
        .collect();
    assert_eq!(minor.matroid.bases(), spanning.as_slice());

    // Spokes 0, 2, 4: the complement is the rim triangle, of rank 2.
    let spokes = w.set(0b01_0101);
    assert_eq!(w.corank_of(&spokes).unwrap(), 2);
}

#[test]
fn wheel3_dual_circuits_are_cocircuits() {
    let w = wheel(3).unwrap().matroid;
    assert_eq!(w.dual().circuit_masks(), w.cocircuit_masks());
    // Complement rule on the rim: e ∈ cl*(rim - e) iff e ∉ cl(E - rim).
    let rim = rim_mask(3);
    for e in bits(rim) {
        let y = rim & !(1 << e);
        let x = w.ground_mask() & !rim;
        let in_cocl = w.coclosure_mask(y) >> e & 1 == 1;
        let in_cl = w.closure_mask(x) >> e & 1 == 1;
        assert_ne!(in_cocl, in_cl);
    }
}

#[test]
fn orthogonality_on_wheel4() {
    let w = wheel(4).unwrap().matroid;
    for &c in w.circuit_masks() {
        for &d in w.cocircuit_masks() {
            assert_ne!(popcount(c & d), 1);
        }
    }
}

#[test]
fn construct_routes() {
    let k4 = from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], "K4").unwrap();
    let (v, e) = (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let trees = k_subsets(6, 3).filter(|&b| components(v, &e, b) == 1).count();
    assert_eq!((k4.rank(), k4.bases().len()), (3, trees));
    assert_eq!(trees, 16);

    let repr = MatroidRepr::Circuits {
        circuits: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
    };
    let m = construct(4, &repr, "c").unwrap();
    assert_eq!(m.bases(), &[0b1001, 0b1010, 0b1100]);

    let bad = Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]], "bad").unwrap();
    assert!(!bad.validate_axioms().unwrap());
    assert!(!brute_exchange_ok(&bad));
}

#[test]
fn minors_and_duals_of_uniforms() {
    let u24 = uniform(2, 4).unwrap();
    assert_eq!(u24.dual(), u24);
    assert_eq!(uniform(1, 3).unwrap().dual(), uniform(2, 3).unwrap());
    let del = u24.delete(&ElementSet::singleton(4, 3).unwrap()).unwrap().matroid;
    assert_eq!(del, uniform(2, 3).unwrap());
    let con = u24.contract(&ElementSet::singleton(4, 0).unwrap()).unwrap().matroid;
    assert_eq!(con, uniform(1, 3).unwrap());
    assert!(uniform(3, 6).unwrap().validate_axioms().unwrap());
}

#[test]
fn relaxations() {
    let w2 = wheel(2).unwrap().matroid;
    assert_eq!(relax(&w2, rim_mask(2)).unwrap(), uniform(2, 4).unwrap());
    assert_eq!(whirl(2).unwrap().matroid, uniform(2, 4).unwrap());
    let w3 = wheel(3).unwrap().matroid;
    let relaxed = relax(&w3, rim_mask(3)).unwrap();
    assert!(brute_exchange_ok(&relaxed));
    assert!(relax(&w3, 0b11).is_err());
}

#[test]
fn transposition_breaks_spike_ordering() {
    let b = spike(4).unwrap();
    // Swap positions 1 and 2, splitting the first two legs.
    let mut seq = b.ordering.as_slice().to_vec();
    seq.swap(1, 2);
    let sigma = CyclicOrdering::new(seq).unwrap();
    assert!(!is_t_cyclic_ordering(&b.matroid, &sigma, 4).unwrap().is_t_cyclic());
}

#[test]
fn searches() {
    let w = wheel(4).unwrap().matroid;
    let sigma = find_cyclic_ordering(&w, 3, SearchMode::TCyclic).unwrap().unwrap();
    assert_eq!(is_t_cyclic_ordering(&w, &sigma, 3).unwrap().parity, Some(Parity::Odd));

    assert!(find_cyclic_ordering(&uniform(1, 3).unwrap(), 2, SearchMode::Property)
        .unwrap()
        .is_none());

    // U(3,6): 4-circuits exist and every 4-set is both; exhaustive check.
    let u36 = uniform(3, 6).unwrap();
    let found = find_cyclic_ordering(&u36, 4, SearchMode::TCyclic).unwrap();
    let any = permutations_fixing_zero(6)
        .into_iter()
        .any(|s| is_t_cyclic_ordering(&u36, &CyclicOrdering::new(s).unwrap(), 4).unwrap().is_t_cyclic());
    assert_eq!(found.is_some(), any);

    let u12 = uniform(1, 2).unwrap();
    let two = direct_sum(&u12, &u12).unwrap();
    let sigma = find_cyclic_ordering(&two, 2, SearchMode::TCyclic).unwrap().unwrap();
    assert_eq!(is_t_cyclic_ordering(&two, &sigma, 2).unwrap().parity, Some(Parity::Even));
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let e = rest.remove(i);
            prefix.push(e);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, e);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

#[test]
fn windows_read_the_generator_layout() {
    let b = wheel(4).unwrap();
    // Element 0 is the first spoke, element 1 the rim edge after it.
    assert_eq!(b.ordering.window(1, 2).unwrap().to_vec(), vec![0, 1]);
    let sigma = CyclicOrdering::identity(6);
    assert_eq!(sigma.window(5, 3).unwrap().to_vec(), vec![0, 4, 5]);
    assert_eq!(sigma.window(2, 6).unwrap().len(), 6);
}
