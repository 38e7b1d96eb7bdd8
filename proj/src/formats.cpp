#include "engelcf/formats.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "engelcf/errors.hpp"

namespace engelcf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        parts.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return parts;
}

unsigned parse_unsigned(std::string_view text, const char* name) {
    const BigInt v = parse_bigint(text);
    if (v < 0 || !v.fits_uint_p()) throw ParseError(std::string(name) + " must be a small non-negative integer");
    return static_cast<unsigned>(v.get_ui());
}

}  // namespace

std::vector<BigInt> parse_integer_list(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty integer list");
    std::vector<BigInt> out;
    for (auto part : split(text, ',')) out.push_back(parse_bigint(trim(part)));
    return out;
}

std::string format_integer_list(const std::vector<BigInt>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += to_decimal(values[i]);
    }
    return out;
}

void write_sequence_file(std::ostream& out, const SequenceFile& file) {
    out << kSequenceHeader << '\n';
    if (file.factors) out << "# z: " << format_integer_list(*file.factors) << '\n';
    for (const auto& t : file.terms) out << to_decimal(t) << '\n';
}

SequenceFile read_sequence_file(std::istream& in) {
    SequenceFile file;
    std::string line;
    if (!std::getline(in, line) || trim(line) != kSequenceHeader) {
        throw ParseError("missing '# engel-seq v1' header");
    }
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t.starts_with("# z:")) {
            file.factors = parse_integer_list(t.substr(4));
        } else if (t.starts_with('#')) {
            continue;
        } else {
            file.terms.push_back(parse_bigint(t));
        }
    }
    return file;
}

RecurrenceSpec parse_spec(std::string_view line) {
    std::map<std::string, std::string, std::less<>> kv;
    std::istringstream words{std::string(trim(line))};
    std::string word;
    while (words >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + word + "'");
        if (!kv.emplace(word.substr(0, eq), word.substr(eq + 1)).second) {
            throw ParseError("duplicate key '" + word.substr(0, eq) + "'");
        }
    }
    const auto take = [&](const char* key) -> std::string {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(std::string("missing key '") + key + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    const unsigned ord = parse_unsigned(take("order"), "order");
    RecurrenceSpec spec;
    if (ord == 2) {
        SecondOrderSpec s;
        s.d1 = parse_unsigned(take("d1"), "d1");
        s.G = parse_integer_list(take("G"));
        spec = std::move(s);
    } else if (ord == 3) {
        ThirdOrderSpec s;
        s.e1 = parse_unsigned(take("e1"), "e1");
        s.e2 = parse_unsigned(take("e2"), "e2");
        const std::string h = take("H");
        for (auto term : split(h, ';')) {
            const auto fields = split(term, ',');
            if (fields.size() != 3) throw ParseError("H terms are i,j,coeff");
            s.H.push_back({parse_unsigned(fields[0], "i"), parse_unsigned(fields[1], "j"), parse_bigint(fields[2])});
        }
        spec = std::move(s);
    } else {
        throw ParseError("order must be 2 or 3");
    }
    if (!kv.empty()) throw ParseError("unknown key '" + kv.begin()->first + "'");
    return spec;
}

std::string format_spec(const RecurrenceSpec& spec) {
    if (const auto* s = std::get_if<SecondOrderSpec>(&spec)) {
        return "order=2 d1=" + std::to_string(s->d1) + " G=" + format_integer_list(s->G);
    }
    const auto& s = std::get<ThirdOrderSpec>(spec);
    std::string h;
    for (std::size_t k = 0; k < s.H.size(); ++k) {
        if (k) h += ';';
        h += std::to_string(s.H[k].i) + "," + std::to_string(s.H[k].j) + "," + to_decimal(s.H[k].coeff);
    }
    return "order=3 e1=" + std::to_string(s.e1) + " e2=" + std::to_string(s.e2) + " H=" + h;
}

}  // namespace engelcf
