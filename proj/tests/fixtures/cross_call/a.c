void CWE369_bad()
{
    float data = 0.0F;
    CWE369_badSink(&data);
}
