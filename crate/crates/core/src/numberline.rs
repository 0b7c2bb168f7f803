//! The ruler-and-mirror model of signed integers.
//!
//! A plane mirror stands perpendicular to a half-line ruler at its zero
//! mark. A token sits on the ruler at `z ≥ 0`; its image sits at `-z`.
//! Moving the token moves the image the opposite way by the same amount,
//! and reading those moves on both sides of the mirror yields the sign
//! rules of addition and subtraction.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

const MINUS: char = '\u{2212}';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberLineError {
    #[error("token position must be on the ruler (z ≥ 0), got {0}")]
    NegativePlacement(i64),
    #[error("moving {delta} from {start} would push the token behind the mirror")]
    BehindMirror { start: i64, delta: i64 },
    #[error("position overflows the ruler")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    None,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::None => Direction::None,
        }
    }

    fn of(delta: i64) -> Direction {
        match delta.signum() {
            1 => Direction::Right,
            -1 => Direction::Left,
            _ => Direction::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Token and image both end farther from zero.
    #[serde(rename = "soma")]
    Soma,
    /// Token and image both end closer to zero.
    #[serde(rename = "subtração")]
    Subtracao,
    #[serde(rename = "identity")]
    Identity,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Soma => "soma",
            Classification::Subtracao => "subtração",
            Classification::Identity => "identity",
        }
    }

    fn of(start: i64, end: i64) -> Classification {
        if start == end {
            Classification::Identity
        } else if end.unsigned_abs() > start.unsigned_abs() {
            Classification::Soma
        } else {
            Classification::Subtracao
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of(v: i64) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => MINUS,
        }
    }
}

/// Bare movement of the token, without rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Movement {
    pub start: i64,
    pub end: i64,
    pub front: Direction,
    pub image: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithmeticStep {
    pub start: i64,
    pub delta: i64,
    pub end: i64,
    pub front_direction: Direction,
    pub image_direction: Direction,
    pub classification: Classification,
    pub front_equation: String,
    pub mirrored_equation: String,
}

/// Integer with a typographic minus.
fn number(v: i64) -> String {
    if v < 0 {
        format!("{MINUS}{}", v.unsigned_abs())
    } else {
        v.to_string()
    }
}

/// Operand as written in an equation: negatives are parenthesized.
fn operand(v: i64) -> String {
    if v < 0 {
        format!("({})", number(v))
    } else {
        number(v)
    }
}

fn equation(start: i64, op: Sign, magnitude: i64, end: i64) -> String {
    format!(
        "{} {} {} = {}",
        operand(start),
        op.symbol(),
        operand(magnitude),
        number(end)
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NumberLineScene {
    token: i64,
    log: Vec<ArithmeticStep>,
}

impl NumberLineScene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn token(&self) -> i64 {
        self.token
    }

    /// Position of the token's image behind the mirror.
    pub fn image(&self) -> i64 {
        -self.token
    }

    pub fn log(&self) -> &[ArithmeticStep] {
        &self.log
    }

    pub fn last_step(&self) -> Option<&ArithmeticStep> {
        self.log.last()
    }

    pub fn place_token(&mut self, z: i64) -> Result<(), NumberLineError> {
        if z < 0 {
            return Err(NumberLineError::NegativePlacement(z));
        }
        self.token = z;
        Ok(())
    }

    /// Slide the token by `delta` without recording a step.
    pub fn shift(&mut self, delta: i64) -> Result<Movement, NumberLineError> {
        let start = self.token;
        let end = start.checked_add(delta).ok_or(NumberLineError::Overflow)?;
        if end < 0 {
            return Err(NumberLineError::BehindMirror { start, delta });
        }
        self.token = end;
        let front = Direction::of(delta);
        Ok(Movement {
            start,
            end,
            front,
            image: front.opposite(),
        })
    }

    /// Slide the token by `delta` and log the front and mirrored equations.
    pub fn displace(&mut self, delta: i64) -> Result<ArithmeticStep, NumberLineError> {
        let mv = self.shift(delta)?;
        let op = Sign::of(delta);
        let magnitude = delta.checked_abs().ok_or(NumberLineError::Overflow)?;
        let step = ArithmeticStep {
            start: mv.start,
            delta,
            end: mv.end,
            front_direction: mv.front,
            image_direction: mv.image,
            classification: Classification::of(mv.start, mv.end),
            front_equation: equation(mv.start, op, magnitude, mv.end),
            mirrored_equation: equation(-mv.start, op, -magnitude, -mv.end),
        };
        self.log.push(step.clone());
        Ok(step)
    }

    /// Clear the token and the log.
    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

pub fn place_token(scene: &mut NumberLineScene, z: i64) -> Result<(), NumberLineError> {
    scene.place_token(z)
}

pub fn displace(scene: &mut NumberLineScene, delta: i64) -> Result<ArithmeticStep, NumberLineError> {
    scene.displace(delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignRuleOutcome {
    pub sign: Sign,
    pub direction: Direction,
}

/// Effective sign of `outer (inner Z)`, read off the model with `Z = 1`.
pub fn sign_rule(outer: Sign, inner: Sign) -> SignRuleOutcome {
    sign_rule_with_magnitude(outer, inner, 1)
}

/// Effective sign of `outer (inner Z)` for a given magnitude `Z ≥ 1`.
///
/// Adding is a move that carries the number away from zero and subtracting
/// is a move toward zero. A positive operand is read on the ruler, so the
/// token's move is observed; a negative operand is read in the mirror, so
/// the image's move is observed. The sign is the direction of what was seen.
pub fn sign_rule_with_magnitude(outer: Sign, inner: Sign, z: i64) -> SignRuleOutcome {
    assert!(z >= 1, "magnitude must be positive");
    let mut scene = NumberLineScene::new();
    // room to move toward zero without reaching the mirror
    scene.token = z.saturating_mul(2);
    let delta = match outer {
        Sign::Plus => z,
        Sign::Minus => -z,
    };
    let mv = scene.shift(delta).expect("replay stays in front of the mirror");
    let direction = match inner {
        Sign::Plus => mv.front,
        Sign::Minus => mv.image,
    };
    let sign = match direction {
        Direction::Left => Sign::Minus,
        _ => Sign::Plus,
    };
    SignRuleOutcome { sign, direction }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Add,
    Sub,
}

impl Operation {
    fn sign(self) -> Sign {
        match self {
            Operation::Add => Sign::Plus,
            Operation::Sub => Sign::Minus,
        }
    }
}

/// `a op b` computed by moving a token in front of the mirror.
///
/// `a` is placed as the token (`a ≥ 0`) or as the token's image (`a < 0`).
/// The sign rule turns `op b` into a move of `|b|` to the left or right of
/// whichever of the two stands at `a`. The token never crosses the mirror:
/// when the answer lies on the other side, the roles of the operands are
/// exchanged and the answer is read off the other side instead.
pub fn eval_signed(a: i64, op: Operation, b: i64) -> Result<i64, NumberLineError> {
    let rule = sign_rule(op.sign(), Sign::of(b));
    let magnitude = b.checked_abs().ok_or(NumberLineError::Overflow)?;
    let step = match rule.direction {
        Direction::Left => -magnitude,
        _ => magnitude,
    };
    let mut scene = NumberLineScene::new();
    if a >= 0 {
        // reading the ruler
        scene.place_token(a)?;
        if a.checked_add(step).ok_or(NumberLineError::Overflow)? >= 0 {
            return Ok(scene.shift(step)?.end);
        }
        // a - m with m > a: the image of m - a
        scene.place_token(-step)?;
        Ok(-scene.shift(-a)?.end)
    } else {
        // reading the mirror: the token stands at |a| and moves oppositely
        let token = a.checked_neg().ok_or(NumberLineError::Overflow)?;
        scene.place_token(token)?;
        if token.checked_sub(step).ok_or(NumberLineError::Overflow)? >= 0 {
            return Ok(-scene.shift(-step)?.end);
        }
        // a + m with m > |a|: read the ruler after m - |a|
        scene.place_token(step)?;
        Ok(scene.shift(a)?.end)
    }
}

/// `(token + image) / 2` for a token at `z`.
pub fn midpoint_check(z: i64) -> Result<i64, NumberLineError> {
    let mut scene = NumberLineScene::new();
    scene.place_token(z)?;
    Ok((scene.token() + scene.image()) / 2)
}

/// Distance between two ruler marks and between their images.
pub fn distance_preservation(a: i64, b: i64) -> Result<(i64, i64), NumberLineError> {
    let mut first = NumberLineScene::new();
    let mut second = NumberLineScene::new();
    first.place_token(a)?;
    second.place_token(b)?;
    let front = (first.token() - second.token()).abs();
    let mirrored = (first.image() - second.image()).abs();
    Ok((front, mirrored))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn placement() {
        let mut s = NumberLineScene::new();
        s.place_token(4).unwrap();
        assert_eq!((s.token(), s.image()), (4, -4));
        s.place_token(0).unwrap();
        assert_eq!((s.token(), s.image()), (0, 0));
        s.place_token(7).unwrap();
        assert_eq!(s.image(), -7);
        assert_eq!(s.place_token(-1), Err(NumberLineError::NegativePlacement(-1)));
        assert_eq!(s.token(), 7);
    }

    #[test]
    fn forward_sum() {
        let mut s = NumberLineScene::new();
        s.place_token(4).unwrap();
        let step = s.displace(5).unwrap();
        assert_eq!(step.end, 9);
        assert_eq!(step.front_equation, "4 + 5 = 9");
        assert_eq!(step.mirrored_equation, "(−4) + (−5) = −9");
        assert_eq!(step.classification, Classification::Soma);
        assert_eq!(step.front_direction, Direction::Right);
        assert_eq!(step.image_direction, Direction::Left);
    }

    #[test]
    fn backward_difference() {
        let mut s = NumberLineScene::new();
        s.place_token(7).unwrap();
        let step = s.displace(-5).unwrap();
        assert_eq!(step.end, 2);
        assert_eq!(step.front_equation, "7 − 5 = 2");
        assert_eq!(step.mirrored_equation, "(−7) − (−5) = −2");
        assert_eq!(step.classification, Classification::Subtracao);
        assert_eq!(step.front_direction, Direction::Left);
        assert_eq!(step.image_direction, Direction::Right);
    }

    #[test]
    fn identity_and_boundary() {
        let mut s = NumberLineScene::new();
        s.place_token(3).unwrap();
        let step = s.displace(0).unwrap();
        assert_eq!(step.classification, Classification::Identity);
        assert_eq!(step.front_direction, Direction::None);
        assert_eq!(step.image_direction, Direction::None);
        let to_zero = s.displace(-3).unwrap();
        assert_eq!(to_zero.classification, Classification::Subtracao);
        assert_eq!(to_zero.mirrored_equation, "(−3) − (−3) = 0");
        assert_eq!(
            s.displace(-1),
            Err(NumberLineError::BehindMirror { start: 0, delta: -1 })
        );
        assert_eq!(s.token(), 0);
        assert_eq!(s.log().len(), 2);
        assert_eq!(s.displace(i64::MAX).unwrap().end, i64::MAX);
        assert_eq!(s.displace(1), Err(NumberLineError::Overflow));
    }

    #[test]
    fn sign_rules() {
        use Sign::{Minus, Plus};
        let expect = [
            ((Plus, Plus), (Plus, Direction::Right)),
            ((Minus, Minus), (Plus, Direction::Right)),
            ((Plus, Minus), (Minus, Direction::Left)),
            ((Minus, Plus), (Minus, Direction::Left)),
        ];
        for ((outer, inner), (sign, direction)) in expect {
            assert_eq!(sign_rule(outer, inner), SignRuleOutcome { sign, direction });
            for z in 1..=100 {
                assert_eq!(sign_rule_with_magnitude(outer, inner, z), sign_rule(outer, inner));
            }
        }
    }

    #[test]
    fn signed_examples() {
        assert_eq!(eval_signed(-4, Operation::Add, -5), Ok(-9));
        assert_eq!(eval_signed(-7, Operation::Sub, -5), Ok(-2));
        assert_eq!(eval_signed(3, Operation::Sub, 5), Ok(-2));
        assert_eq!(eval_signed(-3, Operation::Add, 5), Ok(2));
        assert_eq!(eval_signed(0, Operation::Sub, 0), Ok(0));
    }

    #[test]
    fn midpoint_and_distance() {
        assert_eq!(midpoint_check(5), Ok(0));
        assert_eq!(midpoint_check(0), Ok(0));
        assert!(midpoint_check(-1).is_err());
        assert_eq!(distance_preservation(5, 3), Ok((2, 2)));
        assert_eq!(distance_preservation(9, 9), Ok((0, 0)));
    }

    proptest! {
        #[test]
        fn model_matches_machine(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            prop_assert_eq!(eval_signed(a, Operation::Add, b), Ok(a + b));
            prop_assert_eq!(eval_signed(a, Operation::Sub, b), Ok(a - b));
        }

        #[test]
        fn steps_mirror_each_other(start in 0i64..10_000, delta in -10_000i64..10_000) {
            prop_assume!(start + delta >= 0);
            let mut s = NumberLineScene::new();
            s.place_token(start).unwrap();
            let step = s.displace(delta).unwrap();
            prop_assert_eq!(step.end, step.start + step.delta);
            prop_assert_eq!(step.front_direction.opposite(), step.image_direction);
            prop_assert_eq!(s.token() + s.image(), 0);
            // classification read on the image side agrees
            prop_assert_eq!(Classification::of(-step.start, -step.end), step.classification);
        }
    }
}
