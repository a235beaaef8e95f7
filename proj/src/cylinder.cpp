#include "randinst/cylinder.hpp"

namespace randinst {

template class Cell<BinarySpace>;
template class Cell<FamilySpace>;
template class CylinderSet<BinarySpace>;
template class CylinderSet<FamilySpace>;

}  // namespace randinst
