#include "curvednb.h"
