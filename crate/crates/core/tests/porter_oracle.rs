//! Checks `stem_word` against the checked-in oracle vocabulary
//! (two-column word/stem pairs).

use multirank::stem_word;

#[test]
fn matches_oracle_vocabulary() {
    let data = include_str!("fixtures/porter_oracle.txt");
    let mut checked = 0;
    for line in data.lines() {
        let mut parts = line.split_whitespace();
        let (Some(word), Some(expected)) = (parts.next(), parts.next()) else {
            continue;
        };
        assert_eq!(stem_word(word), expected, "stem of {word:?}");
        checked += 1;
    }
    assert!(
        checked > 5000,
        "oracle file looks truncated: {checked} pairs"
    );
}
