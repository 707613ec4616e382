use super::{apply_code_periodic, enumerate_periodic, Automorphism, PeriodicOrbitTable};
use crate::structure::NonnegMatrix;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The action of an automorphism on one periodic level: a permutation
/// of the level's points commuting with rotation.
#[derive(Debug, Clone)]
pub struct LevelAction {
    pub table: PeriodicOrbitTable,
    /// `map[p]` is the image point index.
    pub map: Vec<usize>,
}

impl LevelAction {
    pub fn new(table: PeriodicOrbitTable, map: Vec<usize>) -> Result<Self> {
        if map.len() != table.points.len() {
            return Err(Error::Precondition(
                "level action has the wrong length".into(),
            ));
        }
        let mut seen = vec![false; map.len()];
        for &img in &map {
            if img >= map.len() || seen[img] {
                return Err(Error::Precondition(
                    "level action is not a permutation of the periodic points".into(),
                ));
            }
            seen[img] = true;
        }
        for p in 0..map.len() {
            if map[table.rotate(p)] != table.rotate(map[p]) {
                return Err(Error::Precondition(
                    "level action does not commute with the shift".into(),
                ));
            }
        }
        Ok(LevelAction { table, map })
    }

    pub fn identity(table: PeriodicOrbitTable) -> Self {
        let map = (0..table.points.len()).collect();
        LevelAction { table, map }
    }

    /// The shift acting on its own periodic points.
    pub fn shift(table: PeriodicOrbitTable) -> Self {
        let map = (0..table.points.len()).map(|p| table.rotate(p)).collect();
        LevelAction { table, map }
    }

    /// Acts by the shift on one full-length orbit and the identity on
    /// every other point.
    pub fn one_orbit_shift(table: PeriodicOrbitTable, orbit: usize) -> Result<Self> {
        if orbit >= table.orbits.len() {
            return Err(Error::IndexOutOfRange {
                context: "one_orbit_shift",
                index: orbit,
                bound: table.orbits.len(),
            });
        }
        let mut map: Vec<usize> = (0..table.points.len()).collect();
        for &p in &table.orbits[orbit].points {
            map[p] = table.rotate(p);
        }
        Self::new(table, map)
    }

    /// Restrict a block-code automorphism to the level; fails when the
    /// induced map is not a bijection of the level's points.
    pub fn from_automorphism(
        aut: &Automorphism,
        table: PeriodicOrbitTable,
        max_points: u64,
    ) -> Result<Self> {
        let (range_table, map) = apply_code_periodic(&aut.forward, &table, max_points)?;
        if range_table.points != table.points {
            return Err(Error::Precondition(
                "automorphism level action needs domain = range".into(),
            ));
        }
        Self::new(table, map).map_err(|_| {
            Error::Precondition("claimed automorphism is not bijective on this level".into())
        })
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &LevelAction) -> Result<Self> {
        if self.table.points != other.table.points {
            return Err(Error::Precondition(
                "level actions live on different tables".into(),
            ));
        }
        let map = (0..self.map.len())
            .map(|p| self.map[other.map[p]])
            .collect();
        Self::new(self.table.clone(), map)
    }

    /// The induced permutation of the full-length orbits `Q_k`:
    /// `xi[i] = j` when orbit `i` maps into orbit `j` (indices into
    /// `table.full_orbits()`).
    pub fn orbit_permutation(&self) -> Vec<usize> {
        let full = self.table.full_orbits();
        let pos_of: BTreeMap<usize, usize> =
            full.iter().enumerate().map(|(pos, &o)| (o, pos)).collect();
        full.iter()
            .map(|&o| {
                let rep = self.table.orbits[o].representative;
                let img_orbit = self.table.orbit_of[self.map[rep]];
                pos_of[&img_orbit]
            })
            .collect()
    }

    /// The gyration number `g_k` in `Z/k`: the sum over full-length
    /// orbits of the rotation offsets `r(alpha, i)` defined by
    /// `alpha(x_i) = sigma^{r} (x_{xi(i)})`, with the canonical
    /// (lexicographically least) representatives.
    pub fn gyration(&self) -> usize {
        let full = self.table.full_orbits();
        let reps: Vec<usize> = full
            .iter()
            .map(|&o| self.table.orbits[o].representative)
            .collect();
        self.gyration_with_reps(&reps)
    }

    /// `g_k` evaluated with caller-chosen orbit representatives (one
    /// point index per full-length orbit); the value is independent of
    /// the choice.
    pub fn gyration_with_reps(&self, reps: &[usize]) -> usize {
        let k = self.table.level;
        let full = self.table.full_orbits();
        assert_eq!(reps.len(), full.len(), "one representative per full orbit");
        // Position of each point within its orbit's rotation order.
        let mut sum = 0usize;
        for &x in reps {
            let image = self.map[x];
            // Find r with image = sigma^r (rep point of image's class
            // as chosen in reps).
            let img_orbit = self.table.orbit_of[image];
            let target_rep = reps
                .iter()
                .copied()
                .find(|&p| self.table.orbit_of[p] == img_orbit)
                .expect("image orbit has a chosen representative");
            let mut cur = target_rep;
            let mut r = 0usize;
            while cur != image {
                cur = self.table.rotate(cur);
                r += 1;
                assert!(r <= k, "image must lie on the target orbit");
            }
            sum = (sum + r) % k;
        }
        sum
    }

    /// Parity of the induced permutation of `Q_k`, in `{0, 1}`.
    pub fn orbit_sign(&self) -> u8 {
        let xi = self.orbit_permutation();
        permutation_parity(&xi)
    }
}

fn permutation_parity(perm: &[usize]) -> u8 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 0u8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        if len % 2 == 0 {
            parity ^= 1;
        }
    }
    parity
}

/// An automorphism action given levelwise, with unspecified levels
/// acting as the identity.
#[derive(Debug, Clone)]
pub struct AutomorphismAction {
    matrix: NonnegMatrix,
    levels: BTreeMap<usize, LevelAction>,
    max_points: u64,
}

impl AutomorphismAction {
    pub fn new(matrix: NonnegMatrix, max_points: u64) -> Self {
        AutomorphismAction {
            matrix,
            levels: BTreeMap::new(),
            max_points,
        }
    }

    /// Build from a block-code automorphism, materializing the given
    /// levels.
    pub fn from_automorphism(
        aut: &Automorphism,
        levels: impl IntoIterator<Item = usize>,
        max_points: u64,
    ) -> Result<Self> {
        let mut action = AutomorphismAction::new(aut.forward.domain.clone(), max_points);
        for level in levels {
            let table = enumerate_periodic(&action.matrix, level, max_points)?;
            let la = LevelAction::from_automorphism(aut, table, max_points)?;
            action.levels.insert(level, la);
        }
        Ok(action)
    }

    /// The shift automorphism.
    pub fn shift(
        matrix: &NonnegMatrix,
        levels: impl IntoIterator<Item = usize>,
        max_points: u64,
    ) -> Result<Self> {
        let mut action = AutomorphismAction::new(matrix.clone(), max_points);
        for level in levels {
            let table = enumerate_periodic(matrix, level, max_points)?;
            action.levels.insert(level, LevelAction::shift(table));
        }
        Ok(action)
    }

    pub fn set_level(&mut self, level: usize, la: LevelAction) -> Result<()> {
        if la.table.level != level {
            return Err(Error::Precondition(
                "level action is at the wrong level".into(),
            ));
        }
        self.levels.insert(level, la);
        Ok(())
    }

    /// The action at a level, defaulting to the identity.
    pub fn level(&self, level: usize) -> Result<LevelAction> {
        if let Some(la) = self.levels.get(&level) {
            return Ok(la.clone());
        }
        let table = enumerate_periodic(&self.matrix, level, self.max_points)?;
        Ok(LevelAction::identity(table))
    }

    /// Levelwise composition `self . other`.
    pub fn compose(&self, other: &AutomorphismAction) -> Result<AutomorphismAction> {
        let mut out = AutomorphismAction::new(self.matrix.clone(), self.max_points);
        let mut keys: Vec<usize> = self
            .levels
            .keys()
            .chain(other.levels.keys())
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for level in keys {
            let composed = self.level(level)?.compose(&other.level(level)?)?;
            out.levels.insert(level, composed);
        }
        Ok(out)
    }
}

/// The sign-gyration-compatibility homomorphism
/// `SGCC_m = g_m + (m/2) sum_{j>0} sign xi_{m/2^j}` in `Z/m`, with the
/// sign terms dropped whenever `m / 2^j` is not an integer (so for odd
/// `m` it is just `g_m`).
pub fn sgcc(action: &AutomorphismAction, m: usize) -> Result<usize> {
    if m < 1 {
        return Err(Error::Precondition("SGCC level must be >= 1".into()));
    }
    let mut value = action.level(m)?.gyration();
    let mut half_levels = Vec::new();
    let mut d = m;
    while d % 2 == 0 {
        d /= 2;
        half_levels.push(d);
    }
    for level in half_levels {
        let sign = action.level(level)?.orbit_sign() as usize;
        value = (value + (m / 2) * sign) % m;
    }
    Ok(value % m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgyration::Automorphism;
    use rand::{Rng, SeedableRng};

    fn two_shift() -> NonnegMatrix {
        NonnegMatrix::from_rows(&[&[2]]).unwrap()
    }

    #[test]
    fn shift_gyration_counts_orbits() {
        // g_k(shift) = |Q_k| mod k.
        let a = two_shift();
        for k in 1..=6 {
            let table = enumerate_periodic(&a, k, 1000).unwrap();
            let full = table.full_orbits().len();
            let la = LevelAction::shift(table);
            assert_eq!(la.gyration(), full % k);
            assert_eq!(la.orbit_sign(), 0, "shift preserves every orbit");
        }
    }

    #[test]
    fn identity_has_zero_gyration() {
        let a = two_shift();
        let table = enumerate_periodic(&a, 4, 1000).unwrap();
        let la = LevelAction::identity(table);
        assert_eq!(la.gyration(), 0);
        assert_eq!(la.orbit_sign(), 0);
    }

    #[test]
    fn one_orbit_shift_has_gyration_one() {
        let a = two_shift();
        let table = enumerate_periodic(&a, 6, 1000).unwrap();
        let orbit = table.full_orbits()[0];
        let la = LevelAction::one_orbit_shift(table, orbit).unwrap();
        assert_eq!(la.gyration(), 1);
        assert_eq!(la.orbit_sign(), 0);
    }

    #[test]
    fn sgcc_paper_values_on_the_two_shift() {
        // The one-orbit-shift on period-6 points has SGCC_6 = 1; the
        // shift itself has SGCC_6 = 3 (|Q_6| = 9).
        let a = two_shift();
        let table6 = enumerate_periodic(&a, 6, 1000).unwrap();
        let orbit = table6.full_orbits()[0];
        let mut alpha = AutomorphismAction::new(a.clone(), 1000);
        alpha
            .set_level(6, LevelAction::one_orbit_shift(table6, orbit).unwrap())
            .unwrap();
        assert_eq!(sgcc(&alpha, 6).unwrap(), 1);

        let sigma = AutomorphismAction::shift(&a, [1, 2, 3, 6], 1000).unwrap();
        assert_eq!(sgcc(&sigma, 6).unwrap(), 3);
    }

    #[test]
    fn sgcc_of_odd_level_is_plain_gyration() {
        let a = two_shift();
        let sigma = AutomorphismAction::shift(&a, [1, 3, 5], 1000).unwrap();
        for m in [3usize, 5] {
            assert_eq!(sgcc(&sigma, m).unwrap(), sigma.level(m).unwrap().gyration());
        }
    }

    #[test]
    fn gyration_independent_of_representatives() {
        let a = two_shift();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(51);
        for k in [3usize, 4, 6] {
            let table = enumerate_periodic(&a, k, 2000).unwrap();
            let full = table.full_orbits();
            // Random rotation-commuting action: random orbit
            // permutation preserving orbit sizes + random offsets.
            let la = random_action(&mut rng, table.clone());
            let base = la.gyration();
            for _ in 0..5 {
                let reps: Vec<usize> = full
                    .iter()
                    .map(|&o| {
                        let pts = &table.orbits[o].points;
                        pts[rng.gen_range(0..pts.len())]
                    })
                    .collect();
                assert_eq!(la.gyration_with_reps(&reps), base);
            }
        }
    }

    /// A random permutation of the full-length orbits combined with
    /// random rotation offsets (the generic element of the level's
    /// automorphism group).
    fn random_action(rng: &mut impl Rng, table: PeriodicOrbitTable) -> LevelAction {
        let full = table.full_orbits();
        let mut target: Vec<usize> = full.clone();
        for i in (1..target.len()).rev() {
            target.swap(i, rng.gen_range(0..=i));
        }
        let mut map: Vec<usize> = (0..table.points.len()).collect();
        for (pos, &o) in full.iter().enumerate() {
            let offset = rng.gen_range(0..table.level);
            let src = &table.orbits[o].points;
            let dst = &table.orbits[target[pos]].points;
            let len = src.len();
            for (s, &p) in src.iter().enumerate() {
                map[p] = dst[(s + offset) % len];
            }
        }
        LevelAction::new(table, map).expect("constructed action commutes with the shift")
    }

    #[test]
    fn gyration_and_sgcc_are_homomorphisms() {
        let a = two_shift();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(57);
        for _ in 0..20 {
            // Levelwise actions for levels 1..=4 and m = 4.
            let mut alpha = AutomorphismAction::new(a.clone(), 3000);
            let mut beta = AutomorphismAction::new(a.clone(), 3000);
            for level in 1..=4usize {
                let table = enumerate_periodic(&a, level, 3000).unwrap();
                alpha
                    .set_level(level, random_action(&mut rng, table.clone()))
                    .unwrap();
                beta.set_level(level, random_action(&mut rng, table))
                    .unwrap();
            }
            let composed = alpha.compose(&beta).unwrap();
            for level in 1..=4usize {
                let g_sum = (alpha.level(level).unwrap().gyration()
                    + beta.level(level).unwrap().gyration())
                    % level;
                assert_eq!(composed.level(level).unwrap().gyration(), g_sum);
            }
            let m = 4;
            let expected = (sgcc(&alpha, m).unwrap() + sgcc(&beta, m).unwrap()) % m;
            assert_eq!(sgcc(&composed, m).unwrap(), expected);
        }
    }

    #[test]
    fn level_action_from_block_code() {
        let a = two_shift();
        let aut = Automorphism::shift(&a).unwrap();
        let table = enumerate_periodic(&a, 3, 1000).unwrap();
        let la = LevelAction::from_automorphism(&aut, table, 1000).unwrap();
        assert_eq!(la.gyration(), la.table.full_orbits().len() % 3);
    }
}
