M32=0xffffffff
def seed_seq_generate(v, n):
    b=[0x8b8b8b8b]*n; s=len(v)
    t = 11 if n>=623 else 7 if n>=68 else 5 if n>=39 else 3 if n>=7 else (n-1)//2
    p=(n-t)//2; q=p+t; m=max(s+1,n)
    T=lambda x:(x^(x>>27))&M32
    for k in range(m):
        r1=(1664525*T(b[k%n]^b[(k+p)%n]^b[(k-1)%n]))&M32
        r2=(r1+(s if k==0 else (k%n)+v[k-1] if k<=s else k%n))&M32
        b[(k+p)%n]=(b[(k+p)%n]+r1)&M32; b[(k+q)%n]=(b[(k+q)%n]+r2)&M32; b[k%n]=r2
    for k in range(m,m+n):
        r3=(1566083941*T((b[k%n]+b[(k+p)%n]+b[(k-1)%n])&M32))&M32
        r4=(r3-(k%n))&M32
        b[(k+p)%n]^=r3; b[(k+q)%n]^=r4; b[k%n]=r4
    return b
def mt64(words):
    n=312;M=(1<<64)-1
    mt=[(words[2*i]|(words[2*i+1]<<32)) for i in range(n)]
    idx=n
    def gen():
        nonlocal idx
        if idx>=n:
            for i in range(n):
                x=(mt[i]&0xFFFFFFFF80000000)|(mt[(i+1)%n]&0x7FFFFFFF)
                xa=x>>1
                if x&1: xa^=0xB5026F5AA96619E9
                mt[i]=mt[(i+156)%n]^xa
            idx=0
        y=mt[idx]; idx+=1
        y^=(y>>29)&0x5555555555555555; y^=(y<<17)&0x71D67FFFEDA60000&M
        y^=(y<<37)&0xFFF7EEE000000000&M; y^=y>>43
        return y&M
    return gen
g=mt64(seed_seq_generate([42,0,0,0],624))
print([hex(g()) for _ in range(3)])
g=mt64(seed_seq_generate([0x89abcdef,0x01234567,5,0],624)); print(hex(g()))
