//! Frozen Cayley tables. Every table uses `z1 = 0`, `z2 = 1`.

pub(super) const KRIPKE4: &[&[usize]] = &[
    &[0, 0, 0, 0],
    &[1, 1, 1, 1],
    &[0, 1, 0, 1],
    &[0, 0, 2, 3],
];

pub(super) const KRIPKE5: &[&[usize]] = &[
    &[0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1],
    &[1, 0, 3, 4, 2],
    &[0, 2, 4, 2, 3],
    &[0, 1, 1, 0, 0],
];

pub(super) const WITNESS5: &[&[usize]] = &[
    &[0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1],
    &[0, 2, 2, 3, 4],
    &[0, 0, 0, 1, 0],
    &[0, 1, 0, 1, 0],
];

pub(super) const WITNESS6: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1],
    &[3, 3, 4, 2, 5, 3],
    &[0, 1, 3, 5, 2, 4],
    &[0, 0, 1, 0, 1, 1],
    &[2, 2, 5, 4, 3, 2],
];

pub(super) const COUNTERMODEL8: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 3, 7, 3, 4, 6, 5, 2],
    &[0, 1, 7, 3, 4, 6, 5, 2],
    &[0, 0, 0, 0, 0, 0, 1, 0],
    &[6, 2, 6, 2, 1, 1, 1, 1],
    &[0, 0, 5, 2, 2, 2, 2, 2],
    &[2, 2, 2, 1, 2, 2, 6, 3],
];

pub(super) const S_NO_H6: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1],
    &[0, 3, 3, 2, 5, 4],
    &[2, 4, 5, 5, 1, 4],
    &[5, 3, 0, 0, 3, 2],
    &[4, 2, 2, 2, 2, 2],
];

pub(super) const D_NOT_H10: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 3, 2, 3, 4, 5, 6, 7, 9, 8],
    &[0, 1, 2, 3, 4, 5, 6, 7, 9, 8],
    &[0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[2, 3, 9, 9, 9, 9, 9, 9, 9, 8],
    &[3, 2, 9, 9, 9, 9, 9, 9, 9, 8],
    &[1, 0, 1, 0, 1, 1, 1, 1, 0, 0],
    &[0, 1, 0, 1, 0, 1, 1, 0, 1, 1],
];

pub(super) const H_NOT_D10: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 1, 3, 4, 9, 6, 8, 5, 7, 2],
    &[0, 1, 9, 2, 3, 7, 5, 8, 6, 4],
    &[0, 0, 1, 1, 1, 1, 1, 1, 0, 0],
    &[0, 0, 2, 0, 0, 0, 0, 0, 3, 1],
    &[2, 2, 2, 8, 3, 9, 4, 7, 9, 7],
    &[8, 3, 2, 8, 3, 9, 4, 7, 3, 1],
    &[9, 2, 2, 3, 8, 1, 3, 7, 1, 7],
    &[2, 2, 2, 2, 4, 7, 6, 7, 2, 0],
];

pub(super) const D_NOT_S4: &[&[usize]] = &[
    &[0, 0, 0, 0],
    &[1, 1, 1, 1],
    &[0, 1, 1, 1],
    &[2, 3, 2, 2],
];

pub(super) const H_NOT_S5: &[&[usize]] = &[
    &[0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1],
    &[3, 1, 0, 3, 1],
    &[2, 4, 3, 4, 2],
    &[2, 2, 1, 0, 3],
];

pub(super) const H_NOT_D5: &[&[usize]] = &[
    &[0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1],
    &[3, 3, 4, 3, 3],
    &[2, 4, 4, 4, 3],
    &[2, 2, 2, 4, 4],
];

pub(super) const WITNESS10: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[3, 3, 4, 3, 7, 5, 9, 6, 8, 2],
    &[0, 1, 9, 3, 2, 5, 7, 4, 8, 6],
    &[0, 0, 1, 1, 1, 0, 0, 0, 1, 1],
    &[2, 2, 7, 2, 8, 9, 4, 3, 4, 2],
    &[0, 0, 6, 4, 8, 7, 3, 3, 4, 9],
    &[2, 2, 6, 4, 8, 9, 4, 3, 4, 9],
    &[2, 2, 4, 8, 4, 3, 4, 4, 8, 9],
    &[3, 4, 7, 3, 9, 2, 2, 9, 2, 3],
];

pub(super) const NONTRIVIALITY_SEP6: &[&[usize]] = &[
    &[0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1],
    &[0, 0, 2, 3, 4, 5],
    &[0, 0, 0, 0, 0, 1],
    &[0, 0, 1, 1, 1, 1],
    &[0, 0, 5, 5, 5, 5],
];
