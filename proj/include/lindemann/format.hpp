#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lindemann {

/// Shortest decimal text that parses back to exactly `v`. Locale independent.
/// Non-finite values render as "nan", "inf" or "-inf".
std::string format_double(double v);

/// Writes one CSV row; fields are emitted verbatim and separated by commas.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);
void write_csv_row(std::ostream& os, std::initializer_list<std::string_view> fields);

}  // namespace lindemann
