#pragma once

#include <string>

#include "json.hpp"

#include "gzroots/genrep.hpp"
#include "gzroots/verify.hpp"

namespace gz {

using json = nlohmann::json;

// A representation file: the generators plus a free-form report object.
struct Document {
  GeneratorSet rep;
  json report = json::object();
};

json to_json(const Document& doc);
Document from_json(const json& j);

// Keys are sorted; floats use the shortest text that reads back to the same bits.
std::string serialize(const Document& doc);
Document parse_document(const std::string& text);

// generator,row,col,re,im; k rows carry the diagonal value q^x
std::string to_csv(const GeneratorSet& g);

json report_to_json(const VerificationReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace gz
