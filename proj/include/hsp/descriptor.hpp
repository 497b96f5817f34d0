#pragma once

#include <cctype>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hsp/error.hpp"
#include "hsp/group.hpp"

// Group descriptor mini-language:
//   cyclic:N | dihedral:N | symmetric:N | heisenberg:P
//   product:<desc>,<desc>
//   cayley:@path.json        with {"order": n, "table": [[...], ...]}
// A list of descriptors is comma separated; product consumes exactly two
// operands, so lists containing products stay unambiguous.
namespace hsp {

namespace detail {

class DescriptorParser {
public:
    DescriptorParser(std::string_view text, std::size_t cap) : text_(text), cap_(cap) {}

    Group parse_one() {
        const std::string kind = read_while([](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; });
        expect(':');
        if (kind == "cyclic") return build_cyclic(read_number(), cap_);
        if (kind == "dihedral") return build_dihedral(read_number(), cap_);
        if (kind == "symmetric") return build_symmetric(read_number(), cap_);
        if (kind == "heisenberg") return build_heisenberg(read_number(), cap_);
        if (kind == "product") {
            Group a = parse_one();
            expect(',');
            Group b = parse_one();
            return build_product(a, b, cap_);
        }
        if (kind == "cayley") {
            expect('@');
            const std::string path = read_while([](char c) { return c != ','; });
            if (path.empty()) fail("missing file path");
            return load_cayley_file(path);
        }
        fail("unknown group kind '" + kind + "'");
    }

    bool done() const { return pos_ == text_.size(); }

    Group load_cayley_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open Cayley file '" + path + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("Cayley file '" + path + "': " + e.what());
        }
        if (!j.contains("table") || !j["table"].is_array()) throw ParseError("Cayley file lacks a \"table\" array");
        Group::Table table;
        try {
            table = j["table"].get<Group::Table>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("Cayley file '" + path + "': " + e.what());
        }
        if (j.contains("order") && j["order"].get<std::size_t>() != table.size())
            throw ParseError("Cayley file: \"order\" does not match table size");
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
        return Group::from_cayley(std::move(table), "cayley:@" + path, std::move(labels), cap_);
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("group descriptor '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    template <class Pred>
    std::string read_while(Pred pred) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::size_t read_number() {
        const std::string digits = read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
        if (digits.empty() || digits.size() > 9) fail("expected a positive integer");
        const std::size_t v = std::stoul(digits);
        if (v == 0) fail("expected a positive integer");
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t cap_;
};

}  // namespace detail

inline Group parse_group(std::string_view descriptor, std::size_t cap = kDefaultSizeCap) {
    detail::DescriptorParser p(descriptor, cap);
    Group g = p.parse_one();
    if (!p.done()) throw ParseError("trailing characters in group descriptor '" + std::string(descriptor) + "'");
    return g;
}

// Splits a comma-separated descriptor list into its descriptors without
// building the groups, so callers can report failures per entry.
inline std::vector<std::string> split_descriptor_list(std::string_view list) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    // Each descriptor needs one operand unless it is a product, which needs two more.
    while (pos < list.size()) {
        const std::size_t start = pos;
        int pending = 1;
        while (pending > 0) {
            const std::size_t colon = list.find(':', pos);
            if (colon == std::string_view::npos) throw ParseError("malformed descriptor list '" + std::string(list) + "'");
            const std::string_view kind = list.substr(pos, colon - pos);
            std::size_t end = list.find(',', colon);
            if (kind == "product") {
                pending += 1;
                pos = colon + 1;
                continue;
            }
            pending -= 1;
            if (end == std::string_view::npos) end = list.size();
            pos = end;
            if (pending > 0) {
                if (pos >= list.size()) throw ParseError("product needs two operands in '" + std::string(list) + "'");
                ++pos;
            }
        }
        out.emplace_back(list.substr(start, pos - start));
        if (pos < list.size()) ++pos;  // skip separator
    }
    return out;
}

}  // namespace hsp
