const int GLOBAL_CONST_TRUE = 1;
