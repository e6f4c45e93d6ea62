#ifndef HVA_HVA_HPP
#define HVA_HVA_HPP

#include "hva/analysis.hpp"
#include "hva/counter.hpp"
#include "hva/error.hpp"
#include "hva/format.hpp"
#include "hva/gallery.hpp"
#include "hva/linalg.hpp"
#include "hva/machine.hpp"
#include "hva/rational.hpp"
#include "hva/sb_codec.hpp"

#endif  // HVA_HVA_HPP
