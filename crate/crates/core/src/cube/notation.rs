use super::{Color, CubeState, Face, Maneuver, Move, Turn, FACELETS};
use crate::error::ParseError;

/// Parses Singmaster text. Tokens may be separated by whitespace or written
/// contiguously (`F2U2B'`); both `'` and the prime sign `′` are accepted.
pub fn parse_maneuver(text: &str) -> Result<Maneuver, ParseError> {
    let mut moves = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        let position = moves.len() + 1;
        let Some(face) = Face::from_letter(c) else {
            let mut token = c.to_string();
            while let Some(&n) = chars.peek() {
                if n.is_whitespace() || Face::from_letter(n).is_some() {
                    break;
                }
                token.push(n);
                chars.next();
            }
            return Err(ParseError::BadToken { position, token });
        };
        let turn = match chars.peek() {
            Some('\'') | Some('′') | Some('’') => {
                chars.next();
                Turn::CounterClockwise
            }
            Some('2') => {
                chars.next();
                Turn::Half
            }
            _ => Turn::Clockwise,
        };
        moves.push(Move::new(face, turn));
    }
    Ok(Maneuver(moves))
}

/// Canonical text form: space-separated, ASCII apostrophe for primes.
pub fn format_maneuver(mv: &Maneuver) -> String {
    mv.moves().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses 54 face letters, faces in order F, L, B, R, U, D.
pub fn parse_facelets(text: &str) -> Result<CubeState, ParseError> {
    let chars: Vec<char> = text.trim().chars().collect();
    if chars.len() != FACELETS {
        return Err(ParseError::Length(chars.len()));
    }
    let mut colors = [Color::of(Face::Front); FACELETS];
    for (position, (&ch, slot)) in chars.iter().zip(colors.iter_mut()).enumerate() {
        let face = Face::from_letter(ch).ok_or(ParseError::IllegalChar { position, ch })?;
        *slot = Color::of(face);
    }
    CubeState::from_colors(colors)
}

pub fn format_facelets(state: &CubeState) -> String {
    state.colors().iter().map(|c| c.face().letter()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::facelet;

    const SOLVED: &str = "FFFFFFFFFLLLLLLLLLBBBBBBBBBRRRRRRRRRUUUUUUUUUDDDDDDDDD";

    #[test]
    fn parses_single_and_contiguous() {
        assert_eq!(
            parse_maneuver("U").unwrap().moves(),
            &[Move::new(Face::Up, Turn::Clockwise)]
        );
        let mv = parse_maneuver("F2U2B'").unwrap();
        assert_eq!(
            mv.moves(),
            &[
                Move::new(Face::Front, Turn::Half),
                Move::new(Face::Up, Turn::Half),
                Move::new(Face::Back, Turn::CounterClockwise)
            ]
        );
        assert_eq!(parse_maneuver("R′ L").unwrap(), parse_maneuver("R' L").unwrap());
        assert!(parse_maneuver("").unwrap().is_empty());
    }

    #[test]
    fn rejects_unknown_token_with_position() {
        assert_eq!(
            parse_maneuver("X2"),
            Err(ParseError::BadToken {
                position: 1,
                token: "X2".into()
            })
        );
        assert!(matches!(
            parse_maneuver("U R Q"),
            Err(ParseError::BadToken { position: 3, .. })
        ));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_maneuver(&parse_maneuver("F2U2B′").unwrap()), "F2 U2 B'");
    }

    #[test]
    fn facelet_strings() {
        assert!(parse_facelets(SOLVED).unwrap().is_solved());
        assert_eq!(format_facelets(&CubeState::solved()), SOLVED);
        assert_eq!(parse_facelets(&SOLVED[..53]), Err(ParseError::Length(53)));
        let mut bad = SOLVED.to_string();
        bad.replace_range(0..1, "X");
        assert!(matches!(
            parse_facelets(&bad),
            Err(ParseError::IllegalChar { position: 0, ch: 'X' })
        ));
        let mut counts = SOLVED.to_string();
        counts.replace_range(0..1, "L");
        assert!(matches!(parse_facelets(&counts), Err(ParseError::ColorCount { .. })));
        // swap a front center with a left corner: counts fine, center wrong
        let mut center: Vec<char> = SOLVED.chars().collect();
        center.swap(4, 9);
        let center: String = center.into_iter().collect();
        assert!(matches!(
            parse_facelets(&center),
            Err(ParseError::CenterMismatch { face: 'F', .. })
        ));
    }

    #[test]
    fn u_turn_string_differs_in_twenty_places() {
        let s = CubeState::solved().apply_move(Move::new(Face::Up, Turn::Clockwise));
        let text = format_facelets(&s);
        let diff: Vec<usize> = text
            .chars()
            .zip(SOLVED.chars())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(diff.len(), 12, "only side-face top rows change color on a solved cube");
        // the 20 moved facelets include the 8 up-face stickers, which keep their color here
        assert!(diff.iter().all(|&i| i % 9 < 3 && i < facelet(Face::Up, 0)));
    }
}
