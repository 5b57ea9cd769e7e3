use std::path::Path;

use crate::config::{parse_flat, parse_value, ConfigError};

/// Hit points and damage values for one game. Everything is tunable; the
/// defaults are chosen so a careless hero can die but a careful one survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    pub hero_max_hp: u32,
    pub hero_attack: u32,
    pub goblin_hp: u32,
    pub goblin_attack: u32,
    pub mage_hp: u32,
    pub mage_bolt_damage: u32,
    /// Euclidean reach of a mage bolt, in tiles.
    pub mage_range: u32,
    pub blob_hp: u32,
    pub blob_attack: u32,
    pub blob_hp_gain: u32,
    pub blob_attack_gain: u32,
    pub ogre_hp: u32,
    pub ogre_attack: u32,
    pub minitaur_hp: u32,
    pub minitaur_attack: u32,
    pub minitaur_stun_rounds: u32,
    pub trap_damage: u32,
    pub potion_heal: u32,
    pub hero_step_limit: u32,
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self {
            hero_max_hp: 20,
            hero_attack: 2,
            goblin_hp: 2,
            goblin_attack: 1,
            mage_hp: 2,
            mage_bolt_damage: 1,
            mage_range: 3,
            blob_hp: 2,
            blob_attack: 2,
            blob_hp_gain: 2,
            blob_attack_gain: 1,
            ogre_hp: 4,
            ogre_attack: 3,
            minitaur_hp: 10,
            minitaur_attack: 3,
            minitaur_stun_rounds: 3,
            trap_damage: 2,
            potion_heal: 5,
            hero_step_limit: 200,
        }
    }
}

macro_rules! rule_fields {
    ($m:ident) => {
        $m! {
            "hero.max_hp" => hero_max_hp,
            "hero.attack" => hero_attack,
            "goblin.hp" => goblin_hp,
            "goblin.attack" => goblin_attack,
            "mage.hp" => mage_hp,
            "mage.bolt_damage" => mage_bolt_damage,
            "mage.range" => mage_range,
            "blob.hp" => blob_hp,
            "blob.attack" => blob_attack,
            "blob.hp_gain" => blob_hp_gain,
            "blob.attack_gain" => blob_attack_gain,
            "ogre.hp" => ogre_hp,
            "ogre.attack" => ogre_attack,
            "minitaur.hp" => minitaur_hp,
            "minitaur.attack" => minitaur_attack,
            "minitaur.stun_rounds" => minitaur_stun_rounds,
            "trap_damage" => trap_damage,
            "potion_heal" => potion_heal,
            "hero_step_limit" => hero_step_limit,
        }
    };
}

impl RuleConfig {
    /// Reads `key = value` overrides on top of the defaults. Unknown keys and
    /// non-positive values are rejected.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let map = parse_flat(text)?;
        let mut rules = Self::default();
        for (key, value) in &map {
            let v: u32 = parse_value(key, value)?;
            if v == 0 {
                return Err(ConfigError::BadValue { key: key.clone(), value: value.clone() });
            }
            macro_rules! assign {
                ($($name:literal => $field:ident),* $(,)?) => {
                    match key.as_str() {
                        $($name => rules.$field = v,)*
                        _ => return Err(ConfigError::UnknownKey(key.clone())),
                    }
                };
            }
            rule_fields!(assign);
        }
        Ok(rules)
    }

    pub fn load(path: &Path) -> Result<Self, RulesFileError> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::parse(&text)?)
    }

    /// Every field as a `key = value` line, in a fixed order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        macro_rules! emit {
            ($($name:literal => $field:ident),* $(,)?) => {
                $(out.push_str(&format!("{} = {}\n", $name, self.$field));)*
            };
        }
        rule_fields!(emit);
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RulesFileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
}
