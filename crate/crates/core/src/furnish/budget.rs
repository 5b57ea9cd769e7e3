use rand::Rng;

use crate::level::EntityKind;
use crate::rng::RandomStream;

/// Count per [`EntityKind`], indexed by `EntityKind::index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KindCounts(pub [usize; 11]);

impl KindCounts {
    pub fn get(&self, kind: EntityKind) -> usize {
        self.0[kind.index()]
    }

    pub fn set(&mut self, kind: EntityKind, n: usize) {
        self.0[kind.index()] = n;
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn monsters(&self) -> usize {
        EntityKind::MONSTERS.iter().map(|&k| self.get(k)).sum()
    }
}

/// How many of each object a furnisher places. Portals come as a pair that
/// is present with `portal_probability`.
#[derive(Debug, Clone, PartialEq)]
pub struct Budget {
    pub counts: KindCounts,
    pub portal_probability: f64,
}

impl Default for Budget {
    fn default() -> Self {
        use EntityKind::*;
        let mut counts = KindCounts::default();
        for (kind, n) in [
            (Entrance, 1),
            (Exit, 1),
            (Treasure, 3),
            (Potion, 5),
            (Portal, 2),
            (Trap, 2),
            (Goblin, 4),
            (GoblinMage, 1),
            (Blob, 2),
            (Ogre, 1),
            (Minitaur, 1),
        ] {
            counts.set(kind, n);
        }
        Self { counts, portal_probability: 0.5 }
    }
}

impl Budget {
    /// Draw the portal pair and return the concrete counts for one level.
    pub fn resolve(&self, rng: &mut RandomStream) -> KindCounts {
        let mut counts = self.counts;
        if !rng.gen_bool(self.portal_probability) {
            counts.set(EntityKind::Portal, 0);
        }
        counts
    }

    /// Objects in placement order.
    pub fn sequence(counts: &KindCounts) -> Vec<EntityKind> {
        EntityKind::ALL.iter().flat_map(|&k| std::iter::repeat_n(k, counts.get(k))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_budget_ratios() {
        let b = Budget::default();
        for portals in [0, 2] {
            let mut c = b.counts;
            c.set(EntityKind::Portal, portals);
            let total = c.total();
            assert!(total == 21 || total == 23);
            assert_eq!(c.monsters(), 9);
            assert!(2 * c.monsters() < total);
            assert!(2 * c.get(EntityKind::Potion) > c.monsters());
            assert!(c.get(EntityKind::Potion) < 2 * c.get(EntityKind::Treasure));
        }
    }

    #[test]
    fn portals_are_paired() {
        let b = Budget::default();
        let mut rng = RandomStream::new(5, "furnish");
        let draws: Vec<usize> = (0..200).map(|_| b.resolve(&mut rng).get(EntityKind::Portal)).collect();
        assert!(draws.iter().all(|&n| n == 0 || n == 2));
        let with = draws.iter().filter(|&&n| n == 2).count();
        assert!((60..140).contains(&with), "{with}");
    }
}
