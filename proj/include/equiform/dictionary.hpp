#pragma once

#include "equiform/letters.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace equiform {

struct NamedForm {
    std::string name;
    Form form;
};

struct Alphabet {
    SetupPtr setup;
    std::vector<Letter> letters;
    std::vector<Contraction> contractions;
    /// Constant invariant horizontal forms added to the syllable set.
    std::vector<NamedForm> invariant_forms;

    const Letter& letter(const std::string& name) const;
    const Contraction& contraction(const std::string& name) const;
};

/// A formal contraction m(l_1, ..., l_r), or one of the added invariant forms.
struct Syllable {
    std::string contraction;
    std::vector<std::size_t> letters;
    std::optional<std::size_t> invariant_form;
    std::string label;
    Form form;
    Bidegree bidegree;

    bool odd() const { return bidegree.total() % 2 != 0; }
};

enum class SyllableOrder {
    /// total degree, then contraction name, then letters by declaration index
    degree_contraction_letters,
    /// contraction name, then letters by declaration index
    contraction_letters,
};

std::string to_string(SyllableOrder o);
SyllableOrder syllable_order_from_string(const std::string& s);

/// Indices into the sorted syllable list; a word is nondecreasing when it is
/// in normal form.
using Word = std::vector<std::size_t>;

/// Words compare length-first, then syllable-wise.
bool word_less(const Word& x, const Word& y);

struct DictionaryOptions {
    SyllableOrder order = SyllableOrder::degree_contraction_letters;
    /// Defaults to the first basis vector of V.
    std::optional<std::vector<KElem>> generic_point;
    /// 0 means no bound on word length.
    int max_length = 0;
};

struct DictionaryEntry {
    Word word;
    bool in_c0 = false;
    Bidegree bidegree;
    Form translation;
};

enum class CandidateOutcome { accepted, dependent, pruned };

struct TranscriptEntry {
    int phase = 0;
    Word word;
    CandidateOutcome outcome = CandidateOutcome::dependent;
    std::string reason;
};

std::string to_string(CandidateOutcome o);

class Dictionary {
public:
    Alphabet alphabet;
    DictionaryOptions options;
    std::vector<Syllable> syllables;
    std::vector<DictionaryEntry> generators;
    std::vector<TranscriptEntry> transcript;
    Point origin;
    Point generic;
    int origin_stabilizer_dim = 0;
    int generic_stabilizer_dim = 0;
    std::vector<KVector> origin_stabilizer;
    std::vector<KVector> generic_stabilizer;

    const HomogeneousSetup& setup() const { return *alphabet.setup; }
    std::string render(const Word& w) const;
    Bidegree bidegree(const Word& w) const;
    /// Index of a syllable by contraction name and letter names.
    std::optional<std::size_t> find_syllable(const std::string& contraction,
                                             const std::vector<std::string>& letters) const;
    std::optional<std::size_t> find_generator(const Word& w) const;
    /// Sort syllables into normal form; returns the sign picked up from
    /// reordering odd syllables.
    int normalize(Word& w) const;
    std::size_t positive_degree_count() const;

    ConstForm evaluate_word(const Word& w, bool at_origin) const;

    std::vector<ConstForm> origin_values;
    std::vector<ConstForm> generic_values;
};

std::vector<Syllable> build_syllables(const Alphabet& alphabet, SyllableOrder order);
Form translate_word(const std::vector<Syllable>& syllables, const Word& w);

Dictionary generate_dictionary(const Alphabet& alphabet, const DictionaryOptions& options = {});

struct CompletenessCell {
    Bidegree bidegree;
    int origin_span = 0;
    int origin_target = 0;
    int generic_span = 0;
    int generic_target = 0;
    bool pass() const { return origin_span == origin_target && generic_span == generic_target; }
};

struct CompletenessReport {
    std::vector<CompletenessCell> cells;
    bool pass() const;
    int generic_total() const;
    int origin_total() const;
};

CompletenessReport completeness_check(const Dictionary& dict, const std::vector<GroupElement>& extra = {},
                                      const std::set<std::size_t>& excluded = {});

/// Whether removing the generator lowers the evaluated rank at the origin or
/// at the generic point.
bool generator_is_necessary(const Dictionary& dict, std::size_t index);

struct ExpressOptions {
    int min_power = -2;
    int max_power = 4;
    bool pairs = true;
    bool triples = false;
};

/// One summand: (sum_n c_n s^n) times a product of generators, where s is the
/// radial invariant with s^2 = aa.
struct CombinationTerm {
    std::vector<std::size_t> generators;
    std::map<int, Scalar> laurent;
    Scalar coefficient;
};

struct GeneratorCombination {
    std::vector<CombinationTerm> terms;
    bool residual = false;
    std::string note;
};

std::string render_laurent(const std::map<int, Scalar>& laurent);
std::string render_combination(const Dictionary& dict, const GeneratorCombination& c);

GeneratorCombination express_in_generators(const Dictionary& dict, const Form& target,
                                           const ExpressOptions& options = {});

/// Sum of coefficient times product of generator translations.
Form combination_form(const Dictionary& dict, const GeneratorCombination& c);

struct DifferentialRow {
    std::string label;
    std::optional<std::size_t> generator;
    Form source;
    Form differential;
    GeneratorCombination combination;
};

std::vector<DifferentialRow> differential_table(const Dictionary& dict, int max_degree,
                                                const ExpressOptions& options = {});

}  // namespace equiform
