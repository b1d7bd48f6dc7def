#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cxn {

// Splits on every occurrence of `sep`; keeps empty pieces.
std::vector<std::string> split(std::string_view text, char sep);

// Splits on runs of spaces and tabs; never yields empty pieces.
std::vector<std::string> split_ws(std::string_view text);

std::string_view trim(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_valid_utf8(std::string_view text);

/// NFC normalization of UTF-8 text. Invalid input is returned unchanged.
std::string nfc(std::string_view text);

/// NFC followed by full Unicode lowercasing (root locale).
std::string nfc_lower(std::string_view text);

bool iequals_ascii(std::string_view a, std::string_view b);

/// Ordering used for CoNLL-U FEATS keys: ASCII case-insensitive, ties broken
/// by raw bytes so distinct keys never compare equivalent.
struct FeatureKeyLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

}  // namespace cxn
