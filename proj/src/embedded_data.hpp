#ifndef NEGATA_EMBEDDED_DATA_HPP_
#define NEGATA_EMBEDDED_DATA_HPP_

#include <string_view>

namespace negata::data {

extern const std::string_view kAuxNegationTsv;
extern const std::string_view kAuxNegationExtraTsv;
extern const std::string_view kIrregularVerbsTsv;
extern const std::string_view kCvcDoubling;
extern const std::string_view kDefaultLexicon;

}  // namespace negata::data

#endif  // NEGATA_EMBEDDED_DATA_HPP_
