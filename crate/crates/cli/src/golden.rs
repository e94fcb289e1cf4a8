use serde::{Deserialize, Serialize};

/// Published census values, indexed by `m − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub t: Vec<u64>,
    pub t_plus: Vec<u64>,
    pub r: Vec<u64>,
    pub r_plus: Vec<u64>,
}

impl Default for Golden {
    fn default() -> Self {
        Golden {
            t: vec![1, 2, 16, 272, 7936],
            t_plus: vec![1, 2, 20, 776, 151_184],
            r: vec![1, 4, 112, 12_352, 4_437_760],
            r_plus: vec![1, 4, 128, 26_368, 41_932_288],
        }
    }
}

/// One compared table cell.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub cell: &'static str,
    pub m: usize,
    pub expected: Option<u64>,
    pub got: u64,
    pub pass: bool,
}

impl Cell {
    pub fn new(cell: &'static str, m: usize, expected: Option<u64>, got: u64) -> Self {
        Cell { cell, m, expected, got, pass: expected == Some(got) }
    }
}
