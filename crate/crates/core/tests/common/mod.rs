//! Test oracles that share no code with the search or the Costas test in the
//! library.

#![allow(dead_code)]

use itertools::Itertools;

use costas::Permutation;

/// Reference table: (n, C(n), D(n), S(n)).
pub const TABLE: [(usize, usize, u64, u64); 14] = [
    (3, 4, 6, 8),
    (4, 12, 10, 30),
    (5, 40, 15, 120),
    (6, 116, 21, 406),
    (7, 200, 28, 800),
    (8, 444, 36, 1998),
    (9, 760, 45, 3800),
    (10, 2160, 55, 11880),
    (11, 4368, 66, 26208),
    (12, 7852, 78, 51038),
    (13, 12828, 91, 89796),
    (14, 17252, 105, 129390),
    (15, 19612, 120, 156896),
    (16, 21104, 136, 179384),
];

pub fn table_row(n: usize) -> (usize, u64, u64) {
    let &(_, c, d, s) = TABLE.iter().find(|r| r.0 == n).expect("order in table");
    (c, d, s)
}

/// Costas test straight from the definition: place the 1s of the n x n
/// permutation matrix, then compare the displacement vector of every ordered
/// pair of 1s with every other one.
pub fn is_costas_by_vectors(values: &[usize]) -> bool {
    let n = values.len();
    let mut ones = Vec::new();
    for row in 1..=n {
        for col in 1..=n {
            if values[col - 1] == row {
                ones.push((col as i64, row as i64));
            }
        }
    }
    let mut vectors = Vec::new();
    for (a, b) in ones.iter().tuple_combinations() {
        vectors.push((b.0 - a.0, b.1 - a.1));
    }
    for (i, u) in vectors.iter().enumerate() {
        for v in &vectors[i + 1..] {
            if u == v {
                return false;
            }
        }
    }
    true
}

/// All Costas arrays of order `n` by filtering every permutation,
/// lexicographically sorted, 1-based.
pub fn brute_force_costas(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .permutations(n)
        .filter(|p| is_costas_by_vectors(p))
        .sorted()
        .collect()
}

pub fn one_based(arrays: &[Permutation]) -> Vec<Vec<usize>> {
    arrays.iter().map(Permutation::to_one_based).collect()
}

pub fn perm(values: &[usize]) -> Permutation {
    Permutation::from_one_based(values).unwrap()
}

pub const U4: [[usize; 4]; 12] = [
    [1, 2, 4, 3],
    [1, 3, 4, 2],
    [1, 4, 2, 3],
    [2, 1, 3, 4],
    [2, 3, 1, 4],
    [2, 4, 3, 1],
    [3, 1, 2, 4],
    [3, 2, 4, 1],
    [3, 4, 2, 1],
    [4, 1, 3, 2],
    [4, 2, 1, 3],
    [4, 3, 1, 2],
];

pub const F5: [[u64; 5]; 5] = [
    [6, 10, 8, 10, 6],
    [10, 6, 8, 6, 10],
    [8, 8, 8, 8, 8],
    [10, 6, 8, 6, 10],
    [6, 10, 8, 10, 6],
];

pub const F6: [[u64; 6]; 6] = [
    [19, 17, 22, 22, 17, 19],
    [17, 24, 17, 17, 24, 17],
    [22, 17, 19, 19, 17, 22],
    [22, 17, 19, 19, 17, 22],
    [17, 24, 17, 17, 24, 17],
    [19, 17, 22, 22, 17, 19],
];

/// Minimal P5 reader: returns (width, height, pixels).
pub fn parse_pgm(bytes: &[u8]) -> (usize, usize, Vec<u8>) {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).unwrap().to_string());
    }
    assert_eq!(fields[0], "P5");
    assert_eq!(fields[3], "255");
    let w: usize = fields[1].parse().unwrap();
    let h: usize = fields[2].parse().unwrap();
    let pixels = bytes[pos + 1..].to_vec();
    assert_eq!(pixels.len(), w * h);
    (w, h, pixels)
}
