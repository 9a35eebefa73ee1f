#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tactor/model/analyzer.hpp"
#include "tactor/syntax/parser.hpp"

namespace support {

inline std::filesystem::path source_dir() { return TACTOR_SOURCE_DIR; }

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string model_text(const std::string& name) { return read_text(source_dir() / "models" / (name + ".rebeca")); }

inline tactor::model::CompiledModel compile(const std::string& source) {
    auto result = tactor::model::load_model(source);
    if (!result.ok()) {
        std::string msg = "model failed to load:";
        for (const auto& d : result.diagnostics) msg += "\n  " + tactor::syntax::to_string(d);
        throw std::runtime_error(msg);
    }
    return std::move(*result.model);
}

inline tactor::model::CompiledModel listing1() { return compile(model_text("listing1")); }

inline std::vector<std::filesystem::path> corpus() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(source_dir() / "tests" / "corpus")) {
        if (e.path().extension() == ".rebeca") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Corpus plus the Listing 1 model.
inline std::vector<std::filesystem::path> corpus_with_listing1() {
    auto out = corpus();
    out.insert(out.begin(), source_dir() / "models" / "listing1.rebeca");
    return out;
}

} // namespace support
