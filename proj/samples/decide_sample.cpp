// Decides a few words and prints their verdicts with certificates.

#include <iostream>

#include "whitebind/whitebind.hpp"

int main() {
  using namespace whitebind;
  const Rank rank(2);
  for (const char* text : {"abab", "ababbb", "abAB", "aB"}) {
    const Verdict v = decide(parse_word(text, rank), rank);
    std::cout << text << ": " << to_string(v.kind) << "  (certificate "
              << (verify(v) ? "verified" : "REJECTED") << ")\n"
              << to_json(v).dump(2) << "\n\n";
  }
  std::cout << "sample binding word in rank 4: " << to_string(sample_binding_word(Rank(4))) << '\n';
}
