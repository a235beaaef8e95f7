#include "randinst/diagonalizer.hpp"

namespace randinst {

template struct EnumeratedOpenSet<BinarySpace>;
template struct EnumeratedOpenSet<FamilySpace>;
template class ApproxEvaluator<BinarySpace>;
template class ApproxEvaluator<FamilySpace>;
template EscapeTranscript<BinarySpace> escape(const EnumeratedOpenSet<BinarySpace>&, std::size_t, EscapeMode,
                                              const EscapeOptions&);
template EscapeTranscript<FamilySpace> escape(const EnumeratedOpenSet<FamilySpace>&, std::size_t, EscapeMode,
                                              const EscapeOptions&);
template AssembledOpenSet<BinarySpace> assemble_open_set(const TestFamily<BinarySpace>&, const EscapeSchedule&,
                                                         std::uint64_t, std::uint64_t);
template AssembledOpenSet<FamilySpace> assemble_open_set(const TestFamily<FamilySpace>&, const EscapeSchedule&,
                                                         std::uint64_t, std::uint64_t);

}  // namespace randinst
