#pragma once

// Text formats shared by the CLI and the golden files:
//   sequence file:  "# engel-seq v1", optional "# z: z2,z3,...", then one
//                   decimal integer per line;
//   spec line:      "order=2 d1=3 G=1,2" or "order=3 e1=2 e2=2 H=0,0,1;1,1,2".

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engelcf/bigint.hpp"
#include "engelcf/sequences.hpp"

namespace engelcf {

inline constexpr std::string_view kSequenceHeader = "# engel-seq v1";

struct SequenceFile {
    std::vector<BigInt> terms;
    std::optional<std::vector<BigInt>> factors;
};

void write_sequence_file(std::ostream& out, const SequenceFile& file);
SequenceFile read_sequence_file(std::istream& in);

/// Comma-separated decimal integers.
std::vector<BigInt> parse_integer_list(std::string_view text);
std::string format_integer_list(const std::vector<BigInt>& values);

RecurrenceSpec parse_spec(std::string_view line);
std::string format_spec(const RecurrenceSpec& spec);

}  // namespace engelcf
