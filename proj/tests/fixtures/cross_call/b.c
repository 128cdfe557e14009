void CWE369_badSink(float *dataPtr)
{
    float data = *dataPtr;
    int result = 100 / data;
}
