#include "mpswap/ecdsa/fuzz_corpus.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "mpswap/error.hpp"

namespace mpswap::ecdsa {

void write_corpus(std::ostream& out, const std::vector<FuzzCase>& cases) {
    for (const auto& c : cases) {
        if (c.label.empty() || c.label.find_first_of(" \t\n") != std::string::npos) {
            throw Error(Errc::kInvalidArgument, "corpus labels must be non-empty single tokens");
        }
        out << c.label << ' ' << to_hex(c.signature) << ' ' << to_hex(c.presignature) << '\n';
    }
}

std::vector<FuzzCase> read_corpus(std::istream& in) {
    std::vector<FuzzCase> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string label, sig, presig, extra;
        if (!(fields >> label >> sig >> presig) || (fields >> extra)) {
            throw Error(Errc::kDecode, "corpus line " + std::to_string(lineno) + " needs 3 fields");
        }
        out.push_back({label, from_hex(sig), from_hex(presig)});
    }
    return out;
}

} // namespace mpswap::ecdsa
