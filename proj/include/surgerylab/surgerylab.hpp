#pragma once

#include "surgerylab/cobordism.hpp"
#include "surgerylab/continued_fraction.hpp"
#include "surgerylab/embed.hpp"
#include "surgerylab/forms.hpp"
#include "surgerylab/integer.hpp"
#include "surgerylab/kirby.hpp"
#include "surgerylab/matrix.hpp"
#include "surgerylab/parallel.hpp"
#include "surgerylab/rational.hpp"
#include "surgerylab/surgery.hpp"
#include "surgerylab/verify.hpp"
