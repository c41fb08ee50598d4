//! Tokenizer shared by indexing and querying.

/// Punctuation that only separates words. Any other character that is
/// neither alphanumeric nor whitespace is a symbol and becomes a token of
/// its own (`=`, `!`, `λ`, `∀`, ...).
const SEPARATORS: &str = "()[]{},;:.'\"_-#`";

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric()
}

/// Lowercased ASCII alphanumeric runs plus single-character symbol tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut word = String::new();
    for c in text.chars() {
        if is_word_char(c) {
            word.push(c.to_ascii_lowercase());
            continue;
        }
        if !word.is_empty() {
            out.push(std::mem::take(&mut word));
        }
        if !c.is_whitespace() && !SEPARATORS.contains(c) {
            out.extend(c.to_lowercase().map(String::from));
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_symbols() {
        assert_eq!(tokenize("Data.Bool.T = x"), ["data", "bool", "t", "=", "x"]);
        assert_eq!(tokenize("\\x : A. f x"), ["\\", "x", "a", "f", "x"]);
        assert_eq!(tokenize("λx. ∀y"), ["λ", "x", "∀", "y"]);
        assert_eq!(tokenize("natural-prime_2"), ["natural", "prime", "2"]);
        assert!(tokenize("  (), ").is_empty());
    }

    #[test]
    fn symbols_are_single_characters() {
        assert_eq!(tokenize("==>"), ["=", "=", ">"]);
    }
}
